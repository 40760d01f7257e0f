#!/usr/bin/env python3
"""Regenerate the bundled OpenQASM benchmarks in crates/core/benchmarks/."""

import math
import random
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "crates" / "core" / "benchmarks"


class Prog:
    def __init__(self, n):
        self.n = n
        self.lines = []

    def g(self, name, *qs, param=None):
        p = f"({param})" if param is not None else ""
        self.lines.append(f"{name}{p} " + ",".join(f"q[{q}]" for q in qs) + ";")

    def cx(self, a, b):
        self.g("cx", a, b)

    def ccx(self, a, b, c):
        # six-CNOT Toffoli
        self.g("h", c)
        self.cx(b, c)
        self.g("tdg", c)
        self.cx(a, c)
        self.g("t", c)
        self.cx(b, c)
        self.g("tdg", c)
        self.cx(a, c)
        self.g("t", b)
        self.g("t", c)
        self.g("h", c)
        self.cx(a, b)
        self.g("t", a)
        self.g("tdg", b)
        self.cx(a, b)

    def cphase(self, theta, a, b):
        self.g("u1", a, param=f"{theta / 2:.6f}")
        self.cx(a, b)
        self.g("u1", b, param=f"{-theta / 2:.6f}")
        self.cx(a, b)
        self.g("u1", b, param=f"{theta / 2:.6f}")

    def text(self):
        head = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{self.n}];", f"creg c[{self.n}];"]
        tail = [f"measure q[{i}] -> c[{i}];" for i in range(self.n)]
        return "\n".join(head + self.lines + tail) + "\n"


def ising(n=10, steps=3):
    p = Prog(n)
    for q in range(n):
        p.g("h", q)
    for _ in range(steps):
        for start in (0, 1):
            for i in range(start, n - 1, 2):
                p.cx(i, i + 1)
                p.g("rz", i + 1, param="0.3")
                p.cx(i, i + 1)
        for q in range(n):
            p.g("rx", q, param="0.2")
    return p


def qft(n=8):
    p = Prog(n)
    for i in range(n):
        p.g("h", i)
        for j in range(i + 1, n):
            p.cphase(math.pi / 2 ** (j - i), j, i)
    return p


def adder(bits=4):
    # cin, a0, b0, a1, b1, ..., cout
    n = 2 * bits + 2
    p = Prog(n)
    a = [1 + 2 * i for i in range(bits)]
    b = [2 + 2 * i for i in range(bits)]
    cin, cout = 0, n - 1

    def maj(x, y, z):
        p.cx(z, y)
        p.cx(z, x)
        p.ccx(x, y, z)

    def uma(x, y, z):
        p.ccx(x, y, z)
        p.cx(z, x)
        p.cx(x, y)

    for i in range(0, bits, 2):
        p.g("x", a[i])
    maj(cin, b[0], a[0])
    for i in range(1, bits):
        maj(a[i - 1], b[i], a[i])
    p.cx(a[-1], cout)
    for i in reversed(range(1, bits)):
        uma(a[i - 1], b[i], a[i])
    uma(cin, b[0], a[0])
    return p


def uccsd(n=8, terms=14, seed=5):
    rng = random.Random(seed)
    p = Prog(n)
    for q in range(n // 2):
        p.g("x", q)
    for t in range(terms):
        lo = rng.randrange(0, n - 2)
        hi = rng.randrange(lo + 2, n)
        for q in (lo, hi):
            p.g("h", q)
        for q in range(lo, hi):
            p.cx(q, q + 1)
        p.g("rz", hi, param=f"{0.1 * (t + 1):.3f}")
        for q in reversed(range(lo, hi)):
            p.cx(q, q + 1)
        for q in (lo, hi):
            p.g("h", q)
        if t % 5 == 4:
            p.cx(lo, hi)
    return p


def arith(n=15, seed=11):
    rng = random.Random(seed)
    p = Prog(n)
    clusters = [list(range(0, 4)), list(range(3, 7)), list(range(7, 11)), list(range(10, 13)), list(range(12, 15))]
    weights = [2, 2, 5, 4, 1]
    for _ in range(60):
        cl = rng.choices(clusters, weights)[0]
        a, b = rng.sample(cl, 2)
        p.cx(a, b)
        if rng.random() < 0.3:
            p.g("t", b)
    for i in range(0, n - 1, 3):
        p.cx(i, i + 1)
    return p


def sym(n=7):
    p = Prog(n)
    tgt = n - 1
    for i in range(n - 1):
        p.g("h", i)
    for i in range(n - 2):
        for j in range(i + 1, n - 1):
            if (i + j) % 2 == 0:
                p.ccx(i, j, tgt)
    for i in range(n - 2):
        p.cx(i, i + 1)
    return p


BENCHES = {
    "ising_10": ising,
    "qft_8": qft,
    "adder_10": adder,
    "uccsd_8": uccsd,
    "arith_15": arith,
    "sym_7": sym,
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, make in BENCHES.items():
        (OUT / f"{name}.qasm").write_text(make().text())
        print(OUT / f"{name}.qasm")


if __name__ == "__main__":
    main()
