"""Small-|Y| behaviour of the apparent velocity.

Fits the order k in beta ~ c Y^k near the origin and prints beta/Y^2 and
beta/Y^3.  The quadratic ratio settles (pi^2/3 for tan, 4/3 for artanh,
L = 1); the cubic one grows like 1/Y.
"""

import numpy as np

from nondiophantine.fields import apparent_beta_artanh, apparent_beta_tan

YS = 10.0 ** -np.arange(1, 6)

if __name__ == "__main__":
    for name, fn in (("tan", apparent_beta_tan), ("artanh", apparent_beta_artanh)):
        b = np.array([fn(1, y) for y in YS])
        k = np.polyfit(np.log(YS), np.log(b), 1)[0]
        print(f"{name}: fitted order {k:.4f}")
        for y, v in zip(YS, b):
            print(f"  Y={y:.0e}  beta/Y^2={v / y ** 2:.6f}  beta/Y^3={v / y ** 3:.6g}")
    print(f"pi^2/3 = {np.pi ** 2 / 3:.6f}, 4/3 = {4 / 3:.6f}")
