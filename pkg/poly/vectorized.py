"""
Compile a Form into a numpy evaluator over a characteristic-2 VectorField.
"""
from typing import Callable, Optional, Sequence

import numpy as np

from field.vectorized import VectorField

from .forms import Form


def compile_form(f: Form, vf: VectorField,
                 embed: Optional[Callable[[int], int]] = None
                 ) -> Callable[[Sequence[np.ndarray]], np.ndarray]:
    """Return a function evaluating f on arrays of coordinates in vf's field."""
    terms = [(embed(c) if embed is not None else c, exp) for exp, c in f.iter_terms()]

    def evaluate(coords: Sequence[np.ndarray]) -> np.ndarray:
        shape = coords[0].shape
        powers = {}
        acc = np.zeros(shape, dtype=np.int64)
        for c, exp in terms:
            value = None
            for i, e in enumerate(exp):
                if not e:
                    continue
                key = (i, e)
                if key not in powers:
                    powers[key] = vf.power(coords[i], e)
                value = powers[key] if value is None else vf.mul(value, powers[key])
            if value is None:
                value = vf.const(c, shape)
            else:
                value = vf.scale(c, value)
            acc ^= value
        return acc

    return evaluate
