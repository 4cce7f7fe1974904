import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("emcx", deadline=None, max_examples=100,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("emcx")


@pytest.fixture(scope="session")
def corpus_report():
    from emcx import corpus
    from emcx.kernel import check_all
    return check_all(corpus.load_scripts(), corpus.statements())
