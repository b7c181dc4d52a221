import pytest

from cremona.config import RunConfig
from cremona.fields import GF
from cremona.gallery import build_example, verify_manifest

_CFG = RunConfig(prime=101, seed=20240)
_instances = {}
_reports = {}


def get_instance(example_id, prime=101):
    key = (example_id, prime)
    if key not in _instances:
        cfg = _CFG.with_prime(prime)
        _instances[key] = build_example(example_id, GF(prime), cfg)
    return _instances[key]


def get_report(example_id, prime=101):
    key = (example_id, prime)
    if key not in _reports:
        cfg = _CFG.with_prime(prime)
        _reports[key] = verify_manifest(get_instance(example_id, prime), cfg)
    return _reports[key]


@pytest.fixture(scope="session")
def cfg():
    return _CFG


@pytest.fixture(scope="session")
def instance_cache():
    return get_instance


@pytest.fixture(scope="session")
def report_cache():
    return get_report
