import numpy as np


def assert_bits(actual, expected, tol):
    assert abs(float(actual) - float(expected)) <= tol, f"{actual} != {expected} within {tol}"


def shannon(*p):
    p = np.asarray(p, dtype=float)
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))
