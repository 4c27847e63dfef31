"""Reference values at 120 digits for the unit tests.

Run from the repository root:
    python3 tests/oracle/mp_values.py > tests/oracle_values.hpp

Every quantity is evaluated straight from its defining formula with
mpmath's Hermitian eigensolver; nothing here shares code with the library.
"""

import mpmath as mp

mp.mp.dps = 120
# Pseudo-powers drop eigenvalues below this; it must sit far below the
# 1e-50 shift used for the singular case.
CUT = mp.mpf("1e-60")

A = mp.matrix([[mp.mpf("0.6"), mp.mpc("0.2", "0.1")], [mp.mpc("0.2", "-0.1"), mp.mpf("0.4")]])
B = mp.matrix([[mp.mpf("0.3"), mp.mpf("-0.1")], [mp.mpf("-0.1"), mp.mpf("0.7")]])

s = 1 / mp.sqrt(2)
A3 = mp.matrix([[mp.mpf("0.5"), mp.mpf("0.1"), mp.mpc(0, "0.05")],
                [mp.mpf("0.1"), mp.mpf("0.3"), mp.mpf("0.02")],
                [mp.mpc(0, "-0.05"), mp.mpf("0.02"), mp.mpf("0.2")]])
v1 = mp.matrix([s, s, 0])
e3 = mp.matrix([0, 0, 1])
B3 = mp.mpf("0.7") * v1 * v1.H + mp.mpf("0.3") * e3 * e3.H  # rank 2

PURE = mp.matrix([[0.5, 0.5], [0.5, 0.5]])
DIAG = mp.matrix([[mp.mpf(2) / 3, 0], [0, mp.mpf(1) / 3]])


def fun(m, f):
    e, q = mp.eighe(m)
    d = mp.diag([f(x) for x in e])
    return q * d * q.H


def tr(m):
    return mp.re(sum(m[i, i] for i in range(m.rows)))


def power(m, p):
    return fun(m, lambda x: mp.power(x, p) if x > CUT else mp.mpf(0))


def renyi(a, b, al):
    return mp.log(tr(power(a, al) * power(b, 1 - al)) / tr(a)) / (al - 1)


def sandwiched(a, b, al):
    g = power(b, (1 - al) / (2 * al))
    return mp.log(tr(power(g * a * g, al)) / tr(a)) / (al - 1)


def flat(a, b, al):
    m = al * fun(a, mp.log) + (1 - al) * fun(b, mp.log)
    return mp.log(tr(fun(m, mp.exp)) / tr(a)) / (al - 1)


def maximal(a, b, f):
    r = power(b, mp.mpf(-0.5))
    h = power(b, mp.mpf(0.5))
    return tr(h * fun(r * a * r, f) * h)


def standard(a, b, f):
    # sum_{i,j} b_j f(a_i / b_j) |<u_i, v_j>|^2 over the spectra of A and B
    ea, ua = mp.eighe(a)
    eb, ub = mp.eighe(b)
    total = mp.mpf(0)
    for i in range(len(ea)):
        for j in range(len(eb)):
            ov = sum(mp.conj(ua[k, i]) * ub[k, j] for k in range(a.rows))
            total += eb[j] * f(ea[i] / eb[j]) * abs(ov) ** 2
    return total


def geometric(b, a):
    r = power(b, mp.mpf(-0.5))
    h = power(b, mp.mpf(0.5))
    return h * fun(r * a * r, mp.sqrt) * h


neg_sqrt = lambda t: -mp.sqrt(t)
hellinger = lambda t: (1 - mp.sqrt(t)) ** 2
eta = lambda t: t * mp.log(t)
min_test = lambda t: 2 * t - 2 * mp.sqrt(t)


def lit(x):
    return mp.nstr(x, 20, min_fixed=-5, max_fixed=5)


def emit_matrix(name, m):
    entries = ", ".join("{%s, %s}" % (lit(mp.re(m[i, j])), lit(mp.im(m[i, j])))
                        for i in range(m.rows) for j in range(m.cols))
    print("inline const std::complex<double> %s[] = {%s};" % (name, entries))


print("#pragma once")
print()
print("// Generated by tests/oracle/mp_values.py (mpmath, 120 digits). Do not edit.")
print()
print("#include <complex>")
print()
print("namespace oracle {")
print()
for al, tag in [("0.5", "05"), ("2", "2"), ("0.3", "03"), ("3", "3")]:
    a = mp.mpf(al)
    print("inline constexpr double renyi_%s = %s;" % (tag, lit(renyi(A, B, a))))
    print("inline constexpr double sandwiched_%s = %s;" % (tag, lit(sandwiched(A, B, a))))
    print("inline constexpr double flat_%s = %s;" % (tag, lit(flat(A, B, a))))
for name, f in [("neg_sqrt", neg_sqrt), ("hellinger", hellinger), ("eta", eta), ("min_test", min_test)]:
    print("inline constexpr double maximal_%s = %s;" % (name, lit(maximal(A, B, f))))
    print("inline constexpr double standard_%s = %s;" % (name, lit(standard(A, B, f))))
emit_matrix("geometric_ba", geometric(B, A))
emit_matrix("log_product_ab", fun(fun(A, mp.log) + fun(B, mp.log), mp.exp))

# Singular B3: the error of the shifted divergence decays like sqrt(eps), so
# eps = 1e-50 is within ~1e-25 of the limit.
eps = mp.mpf("1e-50")
shifted = B3 + eps * mp.eye(3)
print("inline constexpr double singular_limit_neg_sqrt = %s;" % lit(maximal(A3, shifted, neg_sqrt)))
print("inline constexpr double singular_limit_hellinger = %s;" % lit(maximal(A3, shifted, hellinger)))

print("inline constexpr double pure_sandwiched_2 = %s;" % lit(sandwiched(PURE, DIAG, mp.mpf(2))))
print("inline constexpr double pure_renyi_2 = %s;" % lit(renyi(PURE, DIAG, mp.mpf(2))))
print()
print("} // namespace oracle")
