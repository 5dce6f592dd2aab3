# Copyright 2026 The qconc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent numpy computation of the constants frozen in the C++ tests.

Run with `python3 tests/oracle/frozen_values.py`. Nothing here shares code
with the library; subsystem order is big-endian like the library.
"""

import itertools

import numpy as np

np.set_printoptions(precision=17)

SY = np.array([[0, -1j], [1j, 0]])
YY = np.kron(SY, SY)
SINGLET = np.array([0, 1, -1, 0]) / np.sqrt(2)
PM = np.outer(SINGLET, SINGLET)


def tilde(r):
    return YY @ r.conj() @ YY


def moments(r):
    x = r @ tilde(r)
    return np.trace(x).real, np.trace(x @ x).real


def wootters(r):
    # Singular values of W^T (Y x Y) W with rho = W W^dagger over the support.
    p, v = np.linalg.eigh(r)
    keep = p > 1e-12
    w = v[:, keep] * np.sqrt(p[keep])
    lam = np.zeros(4)
    sv = np.linalg.svd(w.T @ YY @ w, compute_uv=False)
    lam[:len(sv)] = sv
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


def hyperdet_tangle(psi):
    a = psi.reshape(2, 2, 2)
    d1 = (a[0, 0, 0] ** 2 * a[1, 1, 1] ** 2 + a[0, 0, 1] ** 2 * a[1, 1, 0] ** 2
          + a[0, 1, 0] ** 2 * a[1, 0, 1] ** 2 + a[1, 0, 0] ** 2 * a[0, 1, 1] ** 2)
    d2 = (a[0, 0, 0] * a[1, 1, 1] * a[0, 1, 1] * a[1, 0, 0]
          + a[0, 0, 0] * a[1, 1, 1] * a[1, 0, 1] * a[0, 1, 0]
          + a[0, 0, 0] * a[1, 1, 1] * a[1, 1, 0] * a[0, 0, 1]
          + a[0, 1, 1] * a[1, 0, 0] * a[1, 0, 1] * a[0, 1, 0]
          + a[0, 1, 1] * a[1, 0, 0] * a[1, 1, 0] * a[0, 0, 1]
          + a[1, 0, 1] * a[0, 1, 0] * a[1, 1, 0] * a[0, 0, 1])
    d3 = (a[0, 0, 0] * a[1, 1, 0] * a[1, 0, 1] * a[0, 1, 1]
          + a[1, 1, 1] * a[0, 0, 1] * a[0, 1, 0] * a[1, 0, 0])
    return 4 * abs(d1 - 2 * d2 + 4 * d3)


def reduce_ab(psi):
    m = psi.reshape(4, 2)
    return m @ m.conj().T


def permute(op, perm):
    n = len(perm)
    t = op.reshape([2] * (2 * n)).transpose(list(perm) + [n + p for p in perm])
    return t.reshape(2 ** n, 2 ** n)


def party_to_copy(op, copies):
    perm = []
    for c in range(copies):
        perm += [c, copies + c]
    return permute(op, perm)


def copy_to_party(op, copies):
    return permute(op, [2 * c for c in range(copies)]
                   + [2 * c + 1 for c in range(copies)])


def pairing(pairs):
    order = [pairs[0][0], pairs[0][1], pairs[1][0], pairs[1][1]]
    return permute(np.kron(PM, PM), [order.index(k) for k in range(4)])


def cyclic_swap():
    u = np.zeros((256, 256))
    for idx in itertools.product(range(4), repeat=4):
        a = list(idx)
        i = np.ravel_multi_index(a, (4,) * 4)
        j = np.ravel_multi_index(a[1:] + a[:1], (4,) * 4)
        u[j, i] = 1
    return u


def main():
    print("== explicit three-qubit state")
    psi = np.array([1, 2j, 0, -1, 0.5, 0, 3, 1 + 1j], dtype=complex)
    psi /= np.linalg.norm(psi)
    r = reduce_ab(psi)
    t1, t2 = moments(r)
    tau = np.sqrt(2 * (t1 ** 2 - t2))
    print("t1", repr(t1), "t2", repr(t2))
    print("tau", repr(tau), "C_moments", repr(np.sqrt(max(0, t1 - tau))))
    print("C_wootters", repr(wootters(r)))
    print("hyperdet", repr(hyperdet_tangle(psi)), "2tau", repr(2 * tau))

    print("== canonical states")
    p = 0.5
    werner = p * PM + (1 - p) * np.eye(4) / 4
    print("werner C", repr(wootters(werner)))
    ghz = np.zeros(8)
    ghz[0] = ghz[7] = 1 / np.sqrt(2)
    w = np.zeros(8)
    w[1] = w[2] = w[4] = 1 / np.sqrt(3)
    for name, s in (("ghz", ghz), ("w", w)):
        rr = reduce_ab(s)
        m = moments(rr)
        print(name, "reduced moments", m, "C", repr(wootters(rr)),
              "hyperdet", repr(hyperdet_tangle(s)))

    print("== two copies")
    b = party_to_copy(4 * np.kron(PM, PM), 2)
    mixed = np.eye(4) / 4
    ov = np.trace(np.kron(mixed, mixed) @ b).real
    print("I/4 t1", moments(mixed)[0], "overlap", ov, "sqrt", np.sqrt(ov))
    print("Tr B", np.trace(b).real)

    print("== four copies")
    pp = np.kron(b / 4, b / 4)
    s = cyclic_swap()
    a = 16 * (pp @ s + s.T @ pp) / 2
    ev = np.linalg.eigvalsh(a)
    print("A nonzero eigenvalues", np.round(ev[np.abs(ev) > 1e-10], 12))

    print("== M and N")
    basis = [pairing([(0, 1), (2, 3)]), pairing([(0, 2), (1, 3)]),
             pairing([(0, 3), (1, 2)])]
    c_nominal = np.sqrt(2) / 2 * np.array([1, -1, -1])
    m_nominal = sum(c * x for c, x in zip(c_nominal, basis))
    print("Tr M nominal", repr(np.trace(m_nominal).real))
    ev = np.linalg.eigvalsh(m_nominal)
    print("M nominal nonzero eig", ev[np.abs(ev) > 1e-10])
    om = np.exp(2j * np.pi / 3)
    dicke = np.zeros(16, dtype=complex)
    for bits, amp in (("0011", 1), ("0101", om), ("0110", om.conjugate()),
                      ("1001", om.conjugate()), ("1010", om), ("1100", 1)):
        dicke[int(bits, 2)] = amp
    dicke /= np.sqrt(6)
    n0 = np.outer(dicke, dicke.conj()) - np.outer(dicke.conj(), dicke)
    n_nominal = np.sqrt(3) * n0
    ev = np.linalg.eigvalsh(n_nominal)
    print("N nominal nonzero eig", ev[np.abs(ev) > 1e-10])
    print("<Psibar|Psi>", np.vdot(dicke.conj(), dicke))

    a_pm = copy_to_party(a, 4)
    mm = np.kron(m_nominal, m_nominal)
    nn = np.kron(n_nominal, n_nominal)
    print("nominal residual", repr(np.linalg.norm(a_pm - 0.5 * (mm - nn))))
    x = np.stack([0.5 * mm.ravel(), -0.5 * nn.ravel()], 1)
    coef, *_ = np.linalg.lstsq(x, a_pm.ravel(), rcond=None)
    print("two-scalar fit", coef.real,
          repr(np.linalg.norm(x @ coef - a_pm.ravel())))

    cols = [np.kron(u, v).ravel() for u in basis for v in basis]
    cols.append(np.kron(n0, n0).ravel())
    g, *_ = np.linalg.lstsq(np.stack(cols, 1), a_pm.ravel(), rcond=None)
    g = g.real
    block = g[:9].reshape(3, 3) * 2
    lam, vec = np.linalg.eigh(block)
    top = vec[:, np.argmax(np.abs(lam))] * np.sqrt(np.abs(lam).max())
    top *= np.sign(top[0])
    print("fitted pairing", top, "multipliers", top / c_nominal)
    n_fit = np.sqrt(-2 * g[9])
    print("fitted n", repr(n_fit), "multiplier", repr(n_fit / np.sqrt(3)))
    m_fit = sum(c * x for c, x in zip(top, basis))
    n_fit_op = n_fit * n0
    resid = np.linalg.norm(
        a_pm - 0.5 * (np.kron(m_fit, m_fit) - np.kron(n_fit_op, n_fit_op)))
    print("fitted residual", resid)

    print("== local6 weights")
    for name, cc, nsc in (("nominal", c_nominal, np.sqrt(3)),
                          ("fitted", top, n_fit)):
        diag = np.sum(cc ** 2)
        off = np.sum(np.outer(cc, cc)) - diag
        print(name, "group weights", 0.5 * diag, 0.5 * off,
              "dicke", -0.5 * nsc ** 2, 0.5 * nsc ** 2)
        d = np.kron(basis[0], basis[0])
        o = np.kron(basis[0], basis[1])
        mx = sum(c * x for c, x in zip(cc, basis))
        red = diag * d + off * o
        print(name, "MM_reduced distance",
              repr(np.linalg.norm(np.kron(mx, mx) - red)))

    print("== singlet on B's projector")
    sing = np.outer(SINGLET, SINGLET)
    print("p", np.trace(np.kron(sing, sing) @ (b / 4)).real)


if __name__ == "__main__":
    main()
