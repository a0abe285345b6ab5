import pytest

from rindler_probe import validate as vd


def _suite_fixture(name):
    @pytest.fixture(scope="session", name=name.replace("-", "_") + "_suite")
    def fixture():
        return vd.run_suite(name)

    return fixture


psi_oracle_suite = _suite_fixture("psi-oracle")
fourier_consistency_suite = _suite_fixture("fourier-consistency")
hk_suite = _suite_fixture("hk")
stationarity_suite = _suite_fixture("stationarity")
montecarlo_planck_suite = _suite_fixture("montecarlo-planck")
mirror_oracle_suite = _suite_fixture("mirror-oracle")
circular_suite = _suite_fixture("circular")
prop2_suite = _suite_fixture("prop2")
localize_suite = _suite_fixture("localize")


def check(suite, name):
    for c in suite["checks"]:
        if c["name"] == name:
            return c
    raise KeyError(f"{suite['suite']}: no check named {name!r}")
