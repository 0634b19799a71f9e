"""Independent reference values frozen into tests/. Uses mpmath only.

Third-kind integrals here take the characteristic with a plus sign,
Pi(n, k) = int_0^{pi/2} dt / ((1 + n sin^2 t) sqrt(1 - k^2 sin^2 t)),
so mpmath's ellippi is called with -n.
"""
import mpmath as mp

mp.mp.dps = 40


def show(name, z):
    z = mp.mpc(z)
    print(f"{name}: {mp.nstr(z.real, 20)} {mp.nstr(z.imag, 20)}")


def K(k):
    return mp.ellipk(mp.mpf(k) ** 2 if not isinstance(k, mp.mpc) else k * k)


def F_segment(phi, k):
    # straight path t = phi s, s in [0, 1]
    f = lambda s: phi / mp.sqrt(1 - k * k * mp.sin(phi * s) ** 2)
    return mp.quad(f, [0, 1])


def Pi_segment(phi, n, k):
    f = lambda s: phi / ((1 + n * mp.sin(phi * s) ** 2) * mp.sqrt(1 - k * k * mp.sin(phi * s) ** 2))
    return mp.quad(f, [0, 1])


def nome_oracle(r, rho, alpha):
    """I0 = w1/w2 on the extremal curve from the modular parameterization."""
    r, rho = mp.mpf(r), mp.mpf(rho)
    kp = lambda m: mp.ellipk(1 - m) / mp.ellipk(m)
    H = (kp(r * r) + kp(1 / rho ** 2)) / 2
    q = mp.exp(-mp.pi * H) * mp.exp(-1j * alpha)
    k2 = (mp.jtheta(2, 0, q) / mp.jtheta(3, 0, q)) ** 4
    return k2 / (k2 - 1)


show("RF(0,2,1)", mp.elliprf(0, 2, 1))
show("RJ(0,1,1,1)", mp.elliprj(0, 1, 1, 1))
show("RJ(0,2,1,0.5)", mp.elliprj(0, 2, 1, 0.5))
show("K(0.5)", mp.ellipk(0.25))
show("K(0.3i)", mp.ellipk(mp.mpc(0, 0.3) ** 2))
show("F(0.5+0.2i,0.6)", F_segment(mp.mpc(0.5, 0.2), mp.mpf(0.6)))
show("Pi(0.2-0.1i,0.4+0.3i)", mp.ellippi(-mp.mpc(0.2, -0.1), mp.mpc(0.4, 0.3) ** 2))
show("Pi(0.6+0.1i,-0.2+0.4i,0.7)", Pi_segment(mp.mpc(0.6, 0.1), mp.mpc(-0.2, 0.4), mp.mpf(0.7)))
show("k(p=0.5,q=-0.075)", mp.sqrt(mp.mpf(-0.075) / mp.mpf(0.425)))
for r in (0.3, 0.5, 0.7):
    show(f"K(sqrt(1-r^2)) r={r}", mp.ellipk(1 - mp.mpf(r) ** 2))
for rho in (1.5, 2, 3):
    show(f"K(sqrt(1-1/rho^2))/rho rho={rho}", mp.ellipk(1 - 1 / mp.mpf(rho) ** 2) / rho)
for a in (0, mp.pi / 3, mp.pi / 2, 2 * mp.pi / 3, mp.pi, 4 * mp.pi / 3):
    show(f"I0 r=0.5 rho=2 alpha={mp.nstr(a, 6)}", nome_oracle(0.5, 2, a))
show("I0 r=0.3 rho=3 alpha=pi/2", nome_oracle(0.3, 3, mp.pi / 2))
# arc z = -e^{i alpha s}: int_0^alpha of the T2 integrand, exact form
for a in (mp.mpf("0.4"), mp.mpf("0.8"), mp.pi / 2):
    r = mp.mpf(0.5)
    f = lambda t: 1j * (-mp.exp(1j * t)) / mp.sqrt(-mp.exp(1j * t) * (r + mp.exp(1j * t)) * (1 + r * mp.exp(1j * t)))
    show(f"arc alpha={mp.nstr(a, 6)}", mp.quad(f, [0, a]))
