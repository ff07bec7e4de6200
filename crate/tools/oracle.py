"""Independent brute-force oracle for the frozen values in the test suites.

Implements the product, negation and residuum directly from the carrier
definitions with Python fractions and enumerates small windows of the
carrier instead of using any structural shortcut.
Run: python3 tools/oracle.py
"""
from fractions import Fraction as F
from itertools import product
import math

T, B = "T", "B"

def Z(): return ("Z",)
def R(): return ("R",)
def plp1(x, h, y): return ("L", x, h, h, y)       # h: predicate on first coordinate
def plp2(x, y): return ("U", x, None, y)           # V = gr(X)
def plp3(x, v, w, y): return ("L", x, v, w, y)
def plp4(x, v, y): return ("U", x, v, y)

def is_gr(t, e):
    if t[0] in "ZR": return True
    if not isinstance(e, tuple) or e[1] in (T, B): return False
    if t[0] == "L":
        return t[3](e[0]) and is_gr(t[4], e[1])
    v = t[2] or (lambda a: is_gr(t[1], a))
    return v(e[0]) and is_gr(t[3], e[1])

def mul(t, a, b):
    if t[0] in "ZR": return a + b
    x, y = t[1], t[-1]
    first = mul(x, a[0], b[0])
    if B in (a[1], b[1]): return (first, B)
    if T in (a[1], b[1]): return (first, T)
    return (first, mul(y, a[1], b[1]))

def pred(t, e):
    assert t[0] == "Z", "oracle only needs predecessors in Z"
    return e - 1

def neg(t, a):
    if t[0] in "ZR": return -a
    x, y = t[1], t[-1]
    n = neg(x, a[0])
    if t[0] == "L":
        if not t[2](a[0]): return (n, B)
        s = a[1]
        return (n, {T: B, B: T}.get(s) if s in (T, B) else neg(y, s))
    if a[1] == T:
        return (pred(x, n), T) if is_gr(x, a[0]) else (n, T)
    return (n, neg(y, a[1]))

def res(t, a, b): return neg(t, mul(t, a, neg(t, b)))

def unit(t):
    if t[0] == "Z": return 0
    if t[0] == "R": return F(0)
    return (unit(t[1]), unit(t[-1]))

def window(t, vals):
    """All carrier points whose scalars come from `vals`."""
    if t[0] == "Z": return [v for v in vals if v == int(v)]
    if t[0] == "R": return [F(v) for v in vals]
    out = []
    for a in window(t[1], vals):
        ys = window(t[-1], vals)
        if t[0] == "L":
            v, w = t[2], t[3]
            out.append((a, B))
            if w(a): out += [(a, y) for y in ys]
            if v(a): out.append((a, T))
        else:
            v = t[2] or (lambda q: is_gr(t[1], q))
            if v(a): out += [(a, y) for y in ys]
            out.append((a, T))
    return out

def key(e):
    if not isinstance(e, tuple): return (e,)
    s = e[1]
    tail = (-math.inf,) if s == B else (math.inf,) if s == T else key(s)
    return key(e[0]) + tail

def show(e):
    if isinstance(e, tuple): return "(%s,%s)" % (show(e[0]), show(e[1]))
    if isinstance(e, F) and e.denominator != 1: return "%d/%d" % (e.numerator, e.denominator)
    return str(int(e)) if not isinstance(e, str) else e

def census(t, vals=(-2, -1, F(-1, 2), 0, F(1, 2), 1, 2)):
    idem = sorted({e for e in window(t, vals) if mul(t, e, e) == e}, key=key)
    u = key(unit(t))
    return idem, sum(key(e) >= u for e in idem), sum(key(e) <= u for e in idem)

isZ = lambda a: a == int(a)
U1 = plp2(Z(), R())
U2 = plp2(Z(), U1)
U3 = plp2(Z(), U2)
I_RZR = plp1(R(), isZ, R())
I_U1 = plp1(U1, lambda a: a[1] != T and a[1] == 0, R())

print("res U1 ((1,2),(0,0)) =", show(res(U1, (1, F(2)), (0, F(0)))))
print("res U1 ((0,T),(0,T)) =", show(res(U1, (0, T), (0, T))))
print("U1 (0,T)^2 =", show(mul(U1, (0, T), (0, T))), " (-1,T)^2 =", show(mul(U1, (-1, T), (-1, T))))
print("neg U1 (0,T) =", show(neg(U1, (0, T))))
for name, t in [("R", R()), ("U1", U1), ("U2", U2), ("U3", U3), ("PLP1(R;Z;R)", I_RZR), ("PLP1(U1;Zx0;R)", I_U1)]:
    idem, pos, negc = census(t)
    print("census", name, [show(e) for e in idem], "pos", pos, "neg", negc)

# Brute force over a window: is (0,T) in U1 immediately followed by anything?
pts = sorted(window(U1, [0, 1] + [F(-k, 7) for k in range(1, 40)]), key=key)
after = [e for e in pts if key(e) > key((0, T))]
print("U1 elements just above (0,T) in window:", [show(e) for e in after[:3]], "... (no least one)")

# Gap in PLP3(R;full;Z;R): nothing between (1/2,B) and (1/2,T).
III = plp3(R(), lambda a: True, isZ, R())
pts = window(III, [F(k, 4) for k in range(-8, 9)])
between = [e for e in pts if key((F(1, 2), B)) < key(e) < key((F(1, 2), T))]
print("III between (1/2,B) and (1/2,T):", between)

# Realization values.
s = lambda v: math.atan(v) / math.pi + 0.5
print("U1 forward (0,0) (0,T) (1,0):", 0 + s(0), 0 + 1.0, 1 + s(0))
print("phi(0.75) =", math.tan(math.pi * 0.75 - math.pi / 2))
print("eval R 0.75 0.75 =", "%.12g" % s(2.0))
# Interval weights of the integers, ordered by |k|, summed directly.
omega = lambda k: 1 / ((abs(k) + 1) * (abs(k) + 2))
below = lambda n: sum(omega(k) for k in range(-200000, n))
print("I(R,Z,R) forward (0,B) (0,0) (0,T) (1/2,B) (1,B):",
      0 + below(0), below(0) + omega(0) * s(0), below(0) + omega(0), 0.5 + below(1), 1 + below(1))
