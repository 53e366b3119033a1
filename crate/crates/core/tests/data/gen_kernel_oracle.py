"""Reference values for the convolution and creep tests.

kernel_oracle.csv: for eta=1, E=2 and alpha in {0.3, 0.5, 0.8}, on the 513
points t = i/512 of [0, 1]:
  creep   k(t) = t^a E_{a,a+1}(-lambda t^a) / eta^a
  strain2 strain for sigma(s) = s^2, which integrates term by term to
          2 t^{a+2} E_{a,a+3}(-lambda t^a) / eta^a
with lambda = tau^{-a}, tau = eta/E.

examples.csv: scalar reference values, name,value.

Series summed in 50-digit arithmetic until terms fall below 1e-45.
"""
import csv
import sys

import mpmath as mp

mp.mp.dps = 50


def ml(a, b, z):
    a, b, z = mp.mpf(a), mp.mpf(b), mp.mpf(z)
    s = mp.mpf(0)
    n = 0
    while True:
        t = z**n * mp.rgamma(a * n + b)
        s += t
        if n > 5 and abs(t) < mp.mpf("1e-45") * max(1, abs(s)):
            return s
        n += 1


def main():
    eta, E = mp.mpf(1), mp.mpf(2)
    tau = eta / E
    with open("kernel_oracle.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["alpha", "t", "creep", "strain2"])
        for a in ["0.3", "0.5", "0.8"]:
            al = mp.mpf(a)
            lam = tau ** (-al)
            for i in range(513):
                t = mp.mpf(i) / 512
                x = lam * t**al
                k = t**al * ml(al, al + 1, -x) / eta**al
                s2 = 2 * t ** (al + 2) * ml(al, al + 3, -x) / eta**al
                w.writerow([a, mp.nstr(t, 20), mp.nstr(k, 25), mp.nstr(s2, 25)])

    ex = {}
    ex["ml_one_half_m4"] = ml("0.5", 1, -4)
    ex["ml_half_half_m0.5"] = ml("0.5", "0.5", "-0.5")
    a = mp.mpf("0.8")
    h = mp.mpf("1e-3")
    f = lambda x: ml(a, 1, -x)
    ex["fd2_0.8_1_at2"] = (f(2 + h) - 2 * f(2) + f(2 - h)) / h**2
    # alpha=0.5, eta=1, E=2, t=1: (tau/eta)^a (1 - E_a(-(t/tau)^a))
    a = mp.mpf("0.5")
    ex["creep_0.5_1_2_t1"] = (tau / eta) ** a * (1 - ml(a, 1, -((1 / tau) ** a)))
    # alpha=0.75, eta=2, E=1, t=0.5
    a, eta2, E2 = mp.mpf("0.75"), mp.mpf(2), mp.mpf(1)
    tau2 = eta2 / E2
    ex["creep_0.75_2_1_t0.5"] = (tau2 / eta2) ** a * (1 - ml(a, 1, -((mp.mpf("0.5") / tau2) ** a)))
    with open("examples.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["name", "value"])
        for k, v in ex.items():
            w.writerow([k, mp.nstr(v, 25)])
    if "--check" in sys.argv:
        print("erfcx(4) =", mp.exp(16) * mp.erfc(4), "vs", ex["ml_one_half_m4"])


if __name__ == "__main__":
    main()
