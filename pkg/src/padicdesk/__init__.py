"""padicdesk: exact p-adic desk calculator.

Modules:
  rationals   -- rationals with p-adic valuation
  cyclotomic  -- exact cyclotomic field arithmetic
  artinian    -- truncated nilpotent coefficient rings
  matrices    -- dense exact matrices and local-ring inversion
  polynomials -- sparse multivariate polynomials and exact linear algebra
  mahler      -- binomial calculus, box functions, root-of-unity expansions
  tate        -- nilpotent derivations on truncated Tate algebras
  glrep       -- GL weight combinatorics and irreducible function models
  branch      -- branching eigenvectors and box restrictions
  uea         -- enveloping-algebra words, determinant operators, dual numbers
  iwahori     -- explicit matrices and congruence-subgroup combinatorics
  characters  -- finite-order unit characters and Gauss sums
  interp      -- epsilon factors and interpolation constants
  suites      -- verification suites
  cli         -- command-line front end
"""

__version__ = "0.1.0"
