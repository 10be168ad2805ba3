"""Pure-numpy recurrence kernels: sequence forward and backward passes.

The compiled extension in ``_ckernels.pyx`` implements the same four
functions with identical signatures; ``backend.py`` picks one at import.

Gate rows in the stacked LSTM weights are ordered [input; forget; output;
candidate], each block ``h`` rows tall.
"""
from __future__ import annotations

import numpy as np


def _sigmoid(z):
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def lstm_forward(x, wx, wh, b):
    """Run the LSTM over inputs ``x`` (T, d) from zero state.

    Returns the final hidden state (h,) and the cache of per-step
    activations needed by the backward pass.
    """
    T = x.shape[0]
    h = wh.shape[1]
    I = np.zeros((T, h))
    F = np.zeros((T, h))
    O = np.zeros((T, h))
    G = np.zeros((T, h))
    C = np.zeros((T, h))
    H = np.zeros((T, h))
    h_prev = np.zeros(h)
    c_prev = np.zeros(h)
    for t in range(T):
        z = wx @ x[t] + wh @ h_prev + b
        I[t] = _sigmoid(z[:h])
        F[t] = _sigmoid(z[h : 2 * h])
        O[t] = _sigmoid(z[2 * h : 3 * h])
        G[t] = np.tanh(z[3 * h :])
        C[t] = F[t] * c_prev + I[t] * G[t]
        H[t] = O[t] * np.tanh(C[t])
        h_prev = H[t]
        c_prev = C[t]
    final = H[T - 1].copy() if T else np.zeros(h)
    return final, (I, F, O, G, C, H)


def lstm_backward(x, wx, wh, b, cache, dh_final):
    """Backpropagate ``dh_final`` through the unrolled LSTM.

    Returns (dx, dwx, dwh, db).
    """
    I, F, O, G, C, H = cache
    T = x.shape[0]
    h = wh.shape[1]
    dx = np.zeros_like(x)
    dwx = np.zeros_like(wx)
    dwh = np.zeros_like(wh)
    db = np.zeros_like(b)
    dh = dh_final.copy()
    dc = np.zeros(h)
    for t in range(T - 1, -1, -1):
        tc = np.tanh(C[t])
        do = dh * tc
        dc = dc + dh * O[t] * (1.0 - tc * tc)
        c_prev = C[t - 1] if t > 0 else np.zeros(h)
        di = dc * G[t]
        df = dc * c_prev
        dg = dc * I[t]
        dz = np.concatenate(
            [
                di * I[t] * (1.0 - I[t]),
                df * F[t] * (1.0 - F[t]),
                do * O[t] * (1.0 - O[t]),
                dg * (1.0 - G[t] * G[t]),
            ]
        )
        h_prev = H[t - 1] if t > 0 else np.zeros(h)
        dwx += np.outer(dz, x[t])
        dwh += np.outer(dz, h_prev)
        db += dz
        dx[t] = wx.T @ dz
        dh = wh.T @ dz
        dc = dc * F[t]
    return dx, dwx, dwh, db


def rnn_forward(x, w, u, b):
    """Vanilla tanh recurrence from zero state; returns final state and cache."""
    T = x.shape[0]
    h = u.shape[1]
    H = np.zeros((T, h))
    h_prev = np.zeros(h)
    for t in range(T):
        H[t] = np.tanh(w @ x[t] + u @ h_prev + b)
        h_prev = H[t]
    final = H[T - 1].copy() if T else np.zeros(h)
    return final, (H,)


def rnn_backward(x, w, u, b, cache, dh_final):
    (H,) = cache
    T = x.shape[0]
    h = u.shape[1]
    dx = np.zeros_like(x)
    dw = np.zeros_like(w)
    du = np.zeros_like(u)
    db = np.zeros_like(b)
    dh = dh_final.copy()
    for t in range(T - 1, -1, -1):
        dz = dh * (1.0 - H[t] * H[t])
        h_prev = H[t - 1] if t > 0 else np.zeros(h)
        dw += np.outer(dz, x[t])
        du += np.outer(dz, h_prev)
        db += dz
        dx[t] = w.T @ dz
        dh = u.T @ dz
    return dx, dw, du, db
