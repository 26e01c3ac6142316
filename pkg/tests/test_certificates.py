import json

import numpy as np
import pytest

from clique_incidence.certificates import (
    FAILED,
    VERIFIED,
    Q2Certificate,
    certificate_catalog,
    require_verified,
    verify_certificate,
)
from clique_incidence.constructions import construct_complete, construct_prism
from clique_incidence.errors import CertificateError
from clique_incidence.graph import Graph, complete, cycle, relabel

# orthogonal columns of norm 1 realizing C4
C4_ROWS = np.array([
    [1 / np.sqrt(2), 0.0],
    [0.5, 0.5],
    [0.0, 1 / np.sqrt(2)],
    [0.5, -0.5],
])


def test_four_cycle_certificate():
    cert = verify_certificate("c4", cycle(4), C4_ROWS, 1.0, "given")
    assert cert.verified
    assert cert.status == VERIFIED
    assert (cert.n, cert.k) == (4, 2)
    assert [mult for _, mult in cert.spectrum] == [2, 2]
    assert cert.spectrum[0][0] == pytest.approx(1.0)
    assert cert.ssp is not None


def test_gram_constant_defaults_to_mean_diagonal():
    cert = verify_certificate("c4", cycle(4), 3.0 * C4_ROWS, None, "given")
    assert cert.verified
    assert cert.c == pytest.approx(9.0)


@pytest.mark.parametrize("M, reason", [
    (np.ones((4, 4)), "need 1 ≤ k < n"),
    (np.ones(4), "must be a matrix"),
    (np.ones((5, 2)), "target has 4 vertices"),
])
def test_shape_failures(M, reason):
    cert = verify_certificate("bad", cycle(4), M, 1.0, "given")
    assert cert.status == FAILED
    assert reason in cert.failure_reason


def test_gram_failure():
    cert = verify_certificate("bad", cycle(4), C4_ROWS, 2.0, "given")
    assert not cert.verified
    assert "MᵀM differs" in cert.failure_reason


def test_pattern_failure():
    cert = verify_certificate("bad", complete(4), C4_ROWS, 1.0, "given")
    assert not cert.verified
    assert "pattern of MMᵀ differs" in cert.failure_reason


def test_tolerances_are_recorded():
    cert = verify_certificate("c4", cycle(4), C4_ROWS, 1.0, "given")
    assert cert.to_dict()["tolerances"]["gram"] == cert.tolerances.gram


def test_relabeled_certificate_realizes_relabeled_target():
    cert = construct_prism(3)
    perm = [5, 3, 1, 0, 2, 4]
    moved = cert.relabeled(perm)
    assert moved.verified
    assert moved.target == relabel(cert.target, perm)
    assert moved.c == pytest.approx(cert.c)
    with pytest.raises(CertificateError):
        cert.relabeled([0, 0, 1, 2, 3, 4])


def test_json_round_trip():
    cert = construct_prism(3)
    loaded = Q2Certificate.from_json(cert.to_json())
    assert loaded.verified
    assert loaded.target == cert.target
    assert loaded.exact_entries == cert.exact_entries
    assert np.allclose(loaded.M, cert.M)
    assert loaded.ssp.has_ssp


def test_from_json_missing_field():
    data = json.loads(construct_complete(3).to_json())
    del data["M"]
    with pytest.raises(CertificateError) as info:
        Q2Certificate.from_json(json.dumps(data))
    assert "'M'" in str(info.value)


def test_from_json_rejects_tampered_verified_file():
    data = json.loads(construct_complete(3).to_json())
    data["c"] = 2.0
    with pytest.raises(CertificateError):
        Q2Certificate.from_json(json.dumps(data))


def test_require_verified():
    good = construct_complete(3)
    assert require_verified(good, complete(3)) is good
    with pytest.raises(CertificateError):
        require_verified(good, Graph(3, ((0, 1),)))
    bad = verify_certificate("bad", cycle(4), C4_ROWS, 2.0, "given")
    with pytest.raises(CertificateError):
        require_verified(bad)


def test_catalog_contents():
    assert [cert.name for cert in certificate_catalog(6)] == ["complete(6)", "prism(3)"]
    names = [cert.name for cert in certificate_catalog(8)]
    assert names[0] == "complete(8)"
    assert {"prism(4)", "bull_join", "c5_join", "triangle_square", "k3_star(8)"} <= set(names)
    assert all(cert.verified and cert.ssp.has_ssp for cert in certificate_catalog(7))


def test_single_vertex_pair():
    cert = verify_certificate("k2", Graph(2, ((0, 1),)), np.array([[1.0], [1.0]]), 2.0, "given")
    assert cert.verified
    assert cert.spectrum[0] == (pytest.approx(2.0), 1)
