import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@pytest.fixture(scope="session")
def small_groups():
    from affine_lab.groups import parse_group_spec
    specs = ["cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "klein", "cyclic:5", "cyclic:6",
             "symmetric:3"]
    return {s: parse_group_spec(s) for s in specs}
