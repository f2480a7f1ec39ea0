#!/usr/bin/env python3
"""Reference values for the dense linear-algebra layer.

Computed with numpy, fully independently of the C++ implementation.
The printed values are frozen as constants in tests/test_linalg.cpp.
"""
import numpy as np


def e(i, j, d):
    m = np.zeros((d, d), dtype=complex)
    m[i, j] = 1.0
    return m


def main():
    np.set_printoptions(precision=12, suppress=True)

    # kron of sigma_x with diag(2,3): expect 4x4 with off-diagonal diag(2,3) blocks
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    d23 = np.diag([2.0, 3.0]).astype(complex)
    k = np.kron(sx, d23)
    print("kron(sigma_x, diag(2,3)) =")
    print(k.real)

    # commutator of matrix units e12, e21
    c = e(0, 1, 2) @ e(1, 0, 2) - e(1, 0, 2) @ e(0, 1, 2)
    print("comm(e12, e21) diag =", np.diag(c).real)

    # nullspace of e11 (2x2): kernel is the second standard vector
    u, s, vh = np.linalg.svd(e(0, 0, 2))
    null = vh.conj().T[:, s.shape[0] - (s < 1e-12).sum():] if (s < 1e-12).any() else vh.conj().T[:, 1:]
    print("nullspace(e11) dim =", (s < 1e-12).sum() + (2 - len(s)), "vector =", np.abs(null[:, 0]))

    # rank of the Gram matrix for {e11+e22, e11-e22, e11}: expect 2
    mats = [e(0, 0, 2) + e(1, 1, 2), e(0, 0, 2) - e(1, 1, 2), e(0, 0, 2)]
    stack = np.stack([m.reshape(-1) for m in mats], axis=1)
    gram = stack.conj().T @ stack
    print("gram rank of {e11+e22, e11-e22, e11} =", np.linalg.matrix_rank(gram, tol=1e-10))

    # span{e11+e22, e11-e22} equals span{e11, e22}: projector distance should be ~0
    def orth(cols):
        q, r = np.linalg.qr(cols)
        keep = np.abs(np.diag(r)) > 1e-12
        return q[:, keep]

    b1 = orth(np.stack([(e(0, 0, 2) + e(1, 1, 2)).reshape(-1),
                        (e(0, 0, 2) - e(1, 1, 2)).reshape(-1)], axis=1))
    b2 = orth(np.stack([e(0, 0, 2).reshape(-1), e(1, 1, 2).reshape(-1)], axis=1))
    p1 = b1 @ b1.conj().T
    p2 = b2 @ b2.conj().T
    print("projector distance diag-span =", np.linalg.norm(p1 - p2))


if __name__ == "__main__":
    main()
