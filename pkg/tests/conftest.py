import time

import pytest

from gammoids import certify, construct, parse_presentation
from gammoids.certificate import certificate_to_doc
from gammoids.corpus import RANK3_DOC, U24_DOC
from gammoids.matroid import Matroid


def uniform(ground: str, k: int) -> Matroid:
    return Matroid.from_independence_oracle(ground, lambda mask: mask.bit_count() <= k)


@pytest.fixture(scope="session")
def u24_run():
    presentation = parse_presentation(U24_DOC)
    start = time.monotonic()
    bundle = construct(presentation)
    cert = certify(bundle)
    elapsed = time.monotonic() - start
    return bundle, cert, elapsed


@pytest.fixture(scope="session")
def r3_run():
    presentation = parse_presentation(RANK3_DOC)
    start = time.monotonic()
    bundle = construct(presentation)
    cert = certify(bundle)
    elapsed = time.monotonic() - start
    return bundle, cert, elapsed


@pytest.fixture(scope="session")
def u24_cert_doc(u24_run):
    _, cert, _ = u24_run
    return certificate_to_doc(cert)
