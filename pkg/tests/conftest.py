import json

import numpy as np
from hypothesis import settings

settings.register_profile("ci", deadline=None, derandomize=True)
settings.load_profile("ci")


def axis_vector(dim, i):
    v = np.zeros(dim, dtype=np.complex128)
    v[i] = 1.0
    return v


def matrix_pairs(matrix):
    m = np.asarray(matrix, dtype=np.complex128)
    return [[[float(x.real), float(x.imag)] for x in row] for row in m]


def write_operator_file(path, matrix, kind, conjugate_first=None):
    m = np.asarray(matrix, dtype=np.complex128)
    data = {"dim": int(m.shape[0]), "kind": kind, "matrix": matrix_pairs(m)}
    if conjugate_first is not None:
        data["conjugate_first"] = conjugate_first
    path.write_text(json.dumps(data))
    return str(path)
