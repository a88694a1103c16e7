"""
Quintic roots and error-function branches
=========================================

Substituting ``x = sqrt(s + i delta')`` turns the Laplace-domain amplitude
into a rational function of ``x`` whose poles are the roots of a quintic.
The quintic factors into ``(x**2 - i delta')`` (the long-time pole at
``s = 0``) times a cubic carrying the reservoir dressing.
"""

import numpy as np

from bandedge import SystemParams, build_quintic, build_root_system, find_roots
from bandedge.polyroots import build_cubic, multiply, quadratic_factor

for params in (SystemParams(gamma=1.0), SystemParams(gamma=1.0, delta_g=1.0)):
    print(f"\ngamma={params.gamma}, delta={params.delta}, delta_g={params.delta_g}")
    quintic = build_quintic(params)
    print("  coefficients c0..c5:", np.round(quintic.coefficients, 4))
    product = multiply(quadratic_factor(params), build_cubic(params))
    print("  factorization error:", max(abs(a - b) for a, b in zip(product.coefficients, quintic.coefficients)))

    rs = build_root_system(params)
    for x, y, a, on in zip(rs.x, rs.y, rs.alpha, rs.contributing):
        print(f"  x={x:+.5f}  x^2={x * x:+.5f}  y={y:+.5f}  alpha={a:+.3e}  {'contributes' if on else 'zero root'}")
    print("  sum of roots:", abs(rs.x.sum()), " sum alpha*x:", abs(np.sum(rs.alpha * rs.x)))
    print("  max residual:", find_roots(quintic).residuals.max())
