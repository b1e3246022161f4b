# SPDX-License-Identifier: Apache-2.0
# Regenerates the symbolic reference values frozen in tests/frozen.hpp.
# Usage: python3 tests/oracle/frozen_values.py > tests/frozen.hpp
import sympy as sp


def emit(name, values):
    vals = ", ".join(sp.N(v, 20).__str__() for v in values)
    print(f"inline constexpr double {name}[] = {{{vals}}};")


def jet_partials():
    x, y, z = sp.symbols("x y z")
    f = sp.exp(sp.Rational(1, 2) * x) * sp.sin(y) + x**2 * z / (1 + y**2) + sp.sqrt(2 + x * y * z)
    p = {x: sp.Rational(3, 10), y: sp.Rational(-7, 10), z: sp.Rational(11, 10)}
    out = []
    # Order: value, then every multi-index of degree 1..3 in lexicographic (descending) order.
    idx = [(0, 0, 0)]
    for deg in (1, 2, 3):
        for a in range(deg, -1, -1):
            for b in range(deg - a, -1, -1):
                idx.append((a, b, deg - a - b))
    for a, b, c in idx:
        out.append(sp.diff(f, x, a, y, b, z, c).subs(p))
    print("// d^alpha f for f = exp(x/2) sin y + x^2 z/(1+y^2) + sqrt(2+xyz) at (0.3,-0.7,1.1);")
    print("// alpha runs over degree 0..3, lexicographically descending within a degree.")
    emit("kJetPartials", out)


class Model:
    def __init__(self, coords, theta, e, f):
        self.x = coords
        self.m = len(coords)
        self.theta = sp.Matrix(theta)
        self.dth = sp.Matrix(self.m, self.m, lambda i, j: sp.diff(theta[j], coords[i]) - sp.diff(theta[i], coords[j]))
        self.E = [sp.Matrix(v) for v in e]
        self.F = [sp.Matrix(v) for v in f]
        r = sp.Matrix(sp.symbols(f"r0:{self.m}"))
        eqs = list(self.dth.T * r) + [(self.theta.T * r)[0] - 1]
        sol = sp.solve(eqs, list(r), dict=True)[0]
        self.r = sp.simplify(r.subs(sol))

    def dtheta(self, a, b):
        return sp.expand((a.T * self.dth * b)[0])

    def bracket(self, a, b):
        J = lambda v: v.jacobian(self.x)
        return J(b) * a - J(a) * b

    def deriv(self, f, v):
        return sum(v[i] * sp.diff(f, self.x[i]) for i in range(self.m))

    def e_solve(self, rhs):
        n = len(self.E)
        beta = sp.symbols(f"b0:{n}")
        mu = sum((beta[c] * self.E[c] for c in range(n)), sp.zeros(self.m, 1))
        sol = sp.solve([self.dtheta(mu, self.F[a]) - rhs[a] for a in range(n)], beta, dict=True)[0]
        return sp.simplify(mu.subs(sol))

    def bgg_d(self, f):
        n = len(self.F)
        mu = self.e_solve([-self.deriv(f, self.F[a]) for a in range(n)])
        return [[-self.dtheta(self.bracket(self.F[a], mu) + f * self.bracket(self.F[a], self.r), self.F[b])
                 for b in range(n)] for a in range(n)]


def bgg_values():
    x1, y1, x2, y2, z = sp.symbols("x1 y1 x2 y2 z")
    c = [x1, y1, x2, y2, z]
    theta = [-y1, 0, -y2, 0, 1]
    E = [[0, 1, 0, 0, 0], [0, 0, 0, 1, 0]]
    p = {x1: sp.Rational(3, 10), y1: sp.Rational(2, 5), x2: sp.Rational(-1, 5), y2: sp.Rational(3, 5), z: sp.Rational(1, 10)}
    f = x1**2 * x2 + sp.sin(y1) * z + sp.exp(sp.Rational(1, 2) * x2) * y2
    for name, F in (("Darboux5", [[1, 0, 0, 0, y1], [0, 0, 1, 0, y2]]),
                    ("Twisted5", [[1, 0, 0, x1, y1], [0, x1, 1, 0, y2]])):
        m = Model(c, theta, E, F)
        d = m.bgg_d(f)
        print(f"// D(rho) for theta(rho) = x1^2 x2 + sin(y1) z + exp(x2/2) y2 on {name.lower()}")
        print("// at (0.3, 0.4, -0.2, 0.6, 0.1), row-major.")
        emit(f"kBgg{name}", [d[a][b].subs(p) for a in range(2) for b in range(2)])
        emit(f"kReeb{name}", list(m.r.subs(p)))


print("// SPDX-License-Identifier: Apache-2.0")
print("// Generated by tests/oracle/frozen_values.py (sympy); do not edit by hand.")
print("#pragma once")
print()
jet_partials()
print()
bgg_values()
