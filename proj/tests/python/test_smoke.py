# Copyright 2026 The scatlab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math
import os

import pytest

import scatlab

CATALOG = os.environ.get("SCATLAB_CATALOG_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "catalog"))


def well(q0, a=1.0):
    return scatlab.Potential.piecewise(a, [(0.0, a, q0)])


def test_riccati():
    assert scatlab.riccati_bessel(0, 0.5) == pytest.approx(math.sin(0.5), rel=1e-14)
    assert scatlab.riccati_neumann(1, 2.0) == pytest.approx(-0.7012240085521105019, rel=1e-12)


def test_potential_round_trip():
    q = scatlab.Potential.load(os.path.join(CATALOG, "two_step.json"))
    assert q.support == 2.0
    assert scatlab.Potential.loads(q.dumps()) == q
    assert q(0.5) == -1.0
    with pytest.raises(scatlab.ValidationError):
        scatlab.Potential.piecewise(1.0, [(0.0, 2.0, -1.0)])


def test_phase_shift():
    ps = scatlab.phase_shift(well(-1.0), 0)
    assert ps.delta == pytest.approx(0.3511299177452372984, abs=1e-10)
    free = scatlab.phase_shift(scatlab.Potential.zero(1.0), 4)
    assert abs(free.delta) < 1e-10
    assert free.jost_magnitude == pytest.approx(1.0, abs=1e-10)


def test_regular_solution():
    phi = scatlab.regular_solution(well(-1.0), 0, [0.5, 1.0])
    k = math.sqrt(2.0)
    assert phi == pytest.approx([math.sin(k * 0.5) / k, math.sin(k) / k], rel=1e-8)


def test_kernel():
    q = well(-1.0)
    kg = scatlab.solve_kernel(q, n_eta=200, eta_max=12.0, refine=False)
    assert kg.K(0.5, 0.5) == pytest.approx(-0.5 ** 3 / 4, rel=1e-6)
    phi = scatlab.regular_solution(q, 2, [0.5])[0]
    assert kg.apply_transform(2, 0.5) == pytest.approx(phi, rel=1e-4)
    assert kg.recover_potential(0.5) == pytest.approx(-1.0, abs=1e-4)


def test_functionals():
    q1, q2 = well(-1.0), well(-1.1)
    h, boundary, _ = scatlab.h(q1, q2, 2)
    assert h == pytest.approx(boundary, rel=1e-8)
    assert scatlab.h0(q1, q2, 0) == pytest.approx(0.027267564329357957615, rel=1e-12)
    bump = scatlab.Potential.piecewise(1.0, [(0.3, 0.6, 1.0)])
    zero = scatlab.Potential.zero(1.0)
    H = scatlab.H(bump, zero, complex(1.5, 2.0))
    assert abs(H - complex(-0.0064899840896587161497, 0.0012440492112629291844)) < 1e-10 * abs(H)


def test_muntz_and_discrimination():
    assert scatlab.muntz_classify("primes") == "divergent"
    assert scatlab.muntz_classify("geometric:2") == "convergent"
    assert scatlab.index_set_members("arithmetic:0:2", 6) == [0, 2, 4, 6]
    rep = scatlab.discriminate(well(-1.0), well(-1.1), "arithmetic:0:1", 10)
    assert len(rep["rows"]) == 11
    assert rep["sup_delta"] > 1e-3
