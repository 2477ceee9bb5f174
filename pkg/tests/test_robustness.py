"""Adversarial and concurrency checks.

The load-bearing property of the whole artifact: whatever a certificate
file claims, the verifier only ever answers Valid when the claimed
embedding is consistent with the necessary conditions.  The fuzzer below
mutates serialized certificates at random and checks exactly that.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest

from symcap.capacities import (
    VolumeVerdict,
    ek_obstruction,
    volume_obstruction,
)
from symcap.certify import (
    build_fullfill2,
    build_lambdatrick,
    build_olga2,
    build_olga3,
    build_olga4,
    certificate_from_json,
    certificate_to_json,
    verify_certificate,
)
from symcap.errors import SymcapError
from symcap.exact import rational


def _sample_certificates():
    return [
        build_olga3(2, 3),
        build_olga3(3, 4),
        build_olga2(3, 1),
        build_lambdatrick(5, 6, 3, 1),
        build_olga4(rational(2 * 10**12), 3),
        build_fullfill2(rational(9), rational(10**30)),
    ]


def _mutate(doc: str, rng: random.Random) -> str:
    """Randomly perturb one numeric token of a JSON certificate."""
    tokens = []
    i = 0
    while i < len(doc):
        if doc[i].isdigit():
            j = i
            while j < len(doc) and doc[j].isdigit():
                j += 1
            tokens.append((i, j))
            i = j
        else:
            i += 1
    if not tokens:
        return doc
    start, end = rng.choice(tokens)
    value = int(doc[start:end])
    kind = rng.randrange(4)
    if kind == 0:
        new = value + rng.choice([-1, 1])
    elif kind == 1:
        new = value * rng.randint(2, 5)
    elif kind == 2:
        new = max(0, value - rng.randint(1, max(1, value)))
    else:
        new = rng.randint(0, 7)
    return doc[:start] + str(new) + doc[end:]


class TestVerifierSoundnessFuzz:
    def test_mutated_certificates_never_verify_unsoundly(self):
        """Whenever the verifier accepts a mutated file, the claimed
        source -> target pair still satisfies volume and capacity
        monotonicity; everything else is rejected or raises a clean
        package error."""
        rng = random.Random(77)
        base_docs = [certificate_to_json(c) for c in _sample_certificates()]
        accepted = rejected = broken = 0
        for _ in range(250):
            doc = rng.choice(base_docs)
            for _ in range(rng.randint(1, 3)):
                doc = _mutate(doc, rng)
            try:
                cert = certificate_from_json(doc)
                result = verify_certificate(cert)
            except (SymcapError, json.JSONDecodeError):
                broken += 1
                continue
            if result:
                accepted += 1
                assert (
                    volume_obstruction(cert.source, cert.target)
                    is VolumeVerdict.PASS
                )
                assert ek_obstruction(cert.source, cert.target, 40) is None
            else:
                rejected += 1
        # the fuzzer must actually exercise both outcomes
        assert rejected > 50
        assert accepted + rejected + broken == 250


class TestConcurrency:
    def test_parallel_verification_is_deterministic(self):
        certs = _sample_certificates() * 4
        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(lambda c: bool(verify_certificate(c)), certs))
        assert all(results)

    def test_parallel_packing_and_capacities(self):
        from symcap.packing import feasible, packing_number
        from symcap.weights import BallPackingProblem

        def job(k):
            p = BallPackingProblem.of(Fraction(2), [Fraction(1)] * 4)
            assert feasible(p).status.value == "Feasible"
            return packing_number(k)

        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(job, list(range(1, 10)) * 3))
        assert results[:9] == results[9:18] == results[18:]


class TestCapacityListInvariant:
    def test_nondecreasing(self, rng):
        from symcap.capacities import Ellipsoid, ek_capacities
        from symcap.exact import Ordering, compare

        for _ in range(20):
            axes = [Fraction(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(3)]
            caps = ek_capacities(Ellipsoid.of(*axes), 50)
            for a, b in zip(caps.values, caps.values[1:]):
                assert compare(a, b) is not Ordering.GREATER


def test_zero_value_interval():
    from symcap.exact import eval_interval, sqrt

    iv = eval_interval(sqrt(2) - sqrt(2), 80)
    assert iv.lo <= 0 <= iv.hi
    assert iv.width <= Fraction(1, 2**80)


def test_cli_bad_integer_parameter(capsys):
    from symcap.cli import main

    code = main(["toric", "subdivide", "x", "2"])
    err = capsys.readouterr().err
    assert code == 2
    assert "error" in err
