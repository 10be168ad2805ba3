# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled recurrence kernels; drop-in replacements for kernels_numpy."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, tanh

cnp.import_array()


cdef inline double _sigmoid(double z) nogil:
    if z >= 0.0:
        return 1.0 / (1.0 + exp(-z))
    cdef double ez = exp(z)
    return ez / (1.0 + ez)


def lstm_forward(double[:, ::1] x, double[:, ::1] wx, double[:, ::1] wh,
                 double[::1] b):
    cdef Py_ssize_t T = x.shape[0]
    cdef Py_ssize_t d = x.shape[1]
    cdef Py_ssize_t h = wh.shape[1]
    cdef cnp.ndarray[double, ndim=2] I = np.zeros((T, h))
    cdef cnp.ndarray[double, ndim=2] F = np.zeros((T, h))
    cdef cnp.ndarray[double, ndim=2] O = np.zeros((T, h))
    cdef cnp.ndarray[double, ndim=2] G = np.zeros((T, h))
    cdef cnp.ndarray[double, ndim=2] C = np.zeros((T, h))
    cdef cnp.ndarray[double, ndim=2] H = np.zeros((T, h))
    cdef double[:, ::1] Iv = I, Fv = F, Ov = O, Gv = G, Cv = C, Hv = H
    cdef cnp.ndarray[double, ndim=1] final = np.zeros(h)
    cdef double[::1] fv = final
    cdef Py_ssize_t t, j, k
    cdef double zi, zf, zo, zg, cprev, hk

    for t in range(T):
        for j in range(h):
            zi = b[j]
            zf = b[h + j]
            zo = b[2 * h + j]
            zg = b[3 * h + j]
            for k in range(d):
                zi += wx[j, k] * x[t, k]
                zf += wx[h + j, k] * x[t, k]
                zo += wx[2 * h + j, k] * x[t, k]
                zg += wx[3 * h + j, k] * x[t, k]
            if t > 0:
                for k in range(h):
                    hk = Hv[t - 1, k]
                    zi += wh[j, k] * hk
                    zf += wh[h + j, k] * hk
                    zo += wh[2 * h + j, k] * hk
                    zg += wh[3 * h + j, k] * hk
            Iv[t, j] = _sigmoid(zi)
            Fv[t, j] = _sigmoid(zf)
            Ov[t, j] = _sigmoid(zo)
            Gv[t, j] = tanh(zg)
            cprev = Cv[t - 1, j] if t > 0 else 0.0
            Cv[t, j] = Fv[t, j] * cprev + Iv[t, j] * Gv[t, j]
            Hv[t, j] = Ov[t, j] * tanh(Cv[t, j])
    if T > 0:
        for j in range(h):
            fv[j] = Hv[T - 1, j]
    return final, (I, F, O, G, C, H)


def lstm_backward(double[:, ::1] x, double[:, ::1] wx, double[:, ::1] wh,
                  double[::1] b, cache, double[::1] dh_final):
    cdef cnp.ndarray[double, ndim=2] I_a, F_a, O_a, G_a, C_a, H_a
    I_a, F_a, O_a, G_a, C_a, H_a = cache
    cdef double[:, ::1] I = I_a, F = F_a, O = O_a, G = G_a, C = C_a, H = H_a
    cdef Py_ssize_t T = x.shape[0]
    cdef Py_ssize_t d = x.shape[1]
    cdef Py_ssize_t h = wh.shape[1]
    cdef cnp.ndarray[double, ndim=2] dx = np.zeros((T, d))
    cdef cnp.ndarray[double, ndim=2] dwx = np.zeros((4 * h, d))
    cdef cnp.ndarray[double, ndim=2] dwh = np.zeros((4 * h, h))
    cdef cnp.ndarray[double, ndim=1] db = np.zeros(4 * h)
    cdef double[:, ::1] dxv = dx, dwxv = dwx, dwhv = dwh
    cdef double[::1] dbv = db
    cdef cnp.ndarray[double, ndim=1] dh_a = np.asarray(dh_final).copy()
    cdef double[::1] dh = dh_a
    cdef cnp.ndarray[double, ndim=1] dc_a = np.zeros(h)
    cdef double[::1] dc = dc_a
    cdef cnp.ndarray[double, ndim=1] dz_a = np.zeros(4 * h)
    cdef double[::1] dz = dz_a
    cdef cnp.ndarray[double, ndim=1] dh_next_a = np.zeros(h)
    cdef double[::1] dh_next = dh_next_a
    cdef Py_ssize_t t, j, k
    cdef double tc, do_j, di, df, dg, cprev, acc

    for t in range(T - 1, -1, -1):
        for j in range(h):
            tc = tanh(C[t, j])
            do_j = dh[j] * tc
            dc[j] = dc[j] + dh[j] * O[t, j] * (1.0 - tc * tc)
            cprev = C[t - 1, j] if t > 0 else 0.0
            di = dc[j] * G[t, j]
            df = dc[j] * cprev
            dg = dc[j] * I[t, j]
            dz[j] = di * I[t, j] * (1.0 - I[t, j])
            dz[h + j] = df * F[t, j] * (1.0 - F[t, j])
            dz[2 * h + j] = do_j * O[t, j] * (1.0 - O[t, j])
            dz[3 * h + j] = dg * (1.0 - G[t, j] * G[t, j])
            dc[j] = dc[j] * F[t, j]
        for j in range(4 * h):
            for k in range(d):
                dwxv[j, k] += dz[j] * x[t, k]
            if t > 0:
                for k in range(h):
                    dwhv[j, k] += dz[j] * H[t - 1, k]
            dbv[j] += dz[j]
        for k in range(d):
            acc = 0.0
            for j in range(4 * h):
                acc += wx[j, k] * dz[j]
            dxv[t, k] = acc
        for k in range(h):
            acc = 0.0
            for j in range(4 * h):
                acc += wh[j, k] * dz[j]
            dh_next[k] = acc
        for k in range(h):
            dh[k] = dh_next[k]
    return dx, dwx, dwh, db


def rnn_forward(double[:, ::1] x, double[:, ::1] w, double[:, ::1] u,
                double[::1] b):
    cdef Py_ssize_t T = x.shape[0]
    cdef Py_ssize_t d = x.shape[1]
    cdef Py_ssize_t h = u.shape[1]
    cdef cnp.ndarray[double, ndim=2] H = np.zeros((T, h))
    cdef double[:, ::1] Hv = H
    cdef cnp.ndarray[double, ndim=1] final = np.zeros(h)
    cdef double[::1] fv = final
    cdef Py_ssize_t t, j, k
    cdef double z

    for t in range(T):
        for j in range(h):
            z = b[j]
            for k in range(d):
                z += w[j, k] * x[t, k]
            if t > 0:
                for k in range(h):
                    z += u[j, k] * Hv[t - 1, k]
            Hv[t, j] = tanh(z)
    if T > 0:
        for j in range(h):
            fv[j] = Hv[T - 1, j]
    return final, (H,)


def rnn_backward(double[:, ::1] x, double[:, ::1] w, double[:, ::1] u,
                 double[::1] b, cache, double[::1] dh_final):
    cdef cnp.ndarray[double, ndim=2] H_a = cache[0]
    cdef double[:, ::1] H = H_a
    cdef Py_ssize_t T = x.shape[0]
    cdef Py_ssize_t d = x.shape[1]
    cdef Py_ssize_t h = u.shape[1]
    cdef cnp.ndarray[double, ndim=2] dx = np.zeros((T, d))
    cdef cnp.ndarray[double, ndim=2] dw = np.zeros((h, d))
    cdef cnp.ndarray[double, ndim=2] du = np.zeros((h, h))
    cdef cnp.ndarray[double, ndim=1] db = np.zeros(h)
    cdef double[:, ::1] dxv = dx, dwv = dw, duv = du
    cdef double[::1] dbv = db
    cdef cnp.ndarray[double, ndim=1] dh_a = np.asarray(dh_final).copy()
    cdef double[::1] dh = dh_a
    cdef cnp.ndarray[double, ndim=1] dz_a = np.zeros(h)
    cdef double[::1] dz = dz_a
    cdef cnp.ndarray[double, ndim=1] dh_next_a = np.zeros(h)
    cdef double[::1] dh_next = dh_next_a
    cdef Py_ssize_t t, j, k
    cdef double acc

    for t in range(T - 1, -1, -1):
        for j in range(h):
            dz[j] = dh[j] * (1.0 - H[t, j] * H[t, j])
        for j in range(h):
            for k in range(d):
                dwv[j, k] += dz[j] * x[t, k]
            if t > 0:
                for k in range(h):
                    duv[j, k] += dz[j] * H[t - 1, k]
            dbv[j] += dz[j]
        for k in range(d):
            acc = 0.0
            for j in range(h):
                acc += w[j, k] * dz[j]
            dxv[t, k] = acc
        for k in range(h):
            acc = 0.0
            for j in range(h):
                acc += u[j, k] * dz[j]
            dh_next[k] = acc
        for k in range(h):
            dh[k] = dh_next[k]
    return dx, dw, du, db
