"""Newton's identities between power sums t_k and elementary symmetric functions s_k:

    k s_k = Σ_{i=1}^{k} (−1)^{i−1} s_{k−i} t_i,   s_0 = 1.
"""
import numpy as np


def power_sums_to_elementary(t) -> np.ndarray:
    """s_1..s_k from t_1..t_k."""
    t = np.asarray(t)
    s = [1.0]
    for k in range(1, t.size + 1):
        total = sum((-1) ** (i - 1) * s[k - i] * t[i - 1] for i in range(1, k + 1))
        s.append(total / k)
    return np.array(s[1:], dtype=np.result_type(t, float))


def elementary_to_power_sums(s) -> np.ndarray:
    """t_1..t_k from s_1..s_k."""
    s_full = np.concatenate([[1.0], np.asarray(s)])
    t = []
    for k in range(1, s_full.size):
        lower = sum((-1) ** (i - 1) * s_full[k - i] * t[i - 1] for i in range(1, k))
        t.append((-1) ** (k - 1) * (k * s_full[k] - lower))
    return np.array(t, dtype=np.result_type(s_full, float))


def newton_convert(values, inverse: bool = False) -> np.ndarray:
    """Power sums to elementary symmetric functions, or back with ``inverse``."""
    if inverse:
        return elementary_to_power_sums(values)
    return power_sums_to_elementary(values)
