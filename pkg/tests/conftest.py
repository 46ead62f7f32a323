import json
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from cfree.series import TruncatedSeries, TwoStateLaw


def ts(*coeffs) -> TruncatedSeries:
    return TruncatedSeries(coeffs)


rationals = st.fractions(min_value=-4, max_value=4, max_denominator=6)
nonzero_rationals = rationals.filter(bool)


@st.composite
def laws(draw, order=6, psi1=None, phi1_nonzero=False):
    psi = [draw(rationals) for _ in range(order)]
    phi = [draw(rationals) for _ in range(order)]
    if psi1 is not None:
        psi[0] = Fraction(psi1) if psi1 != "nonzero" else draw(nonzero_rationals)
    if phi1_nonzero:
        phi[0] = draw(nonzero_rationals)
    return TwoStateLaw(psi, phi)


@pytest.fixture
def write_json(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    return write
