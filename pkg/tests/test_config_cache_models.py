import pytest
from pydantic import ValidationError

from cache import ExpansionCache
from config import Settings
from models import CliConfig, MembershipReport, Mode, Verdict


class TestSettings:
    def test_defaults(self, monkeypatch):
        monkeypatch.delenv("QHYPER_SAMPLES", raising=False)
        assert Settings().samples == 3

    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("QHYPER_SAMPLES", "7")
        monkeypatch.setenv("QHYPER_LOG_LEVEL", "debug")
        s = Settings()
        assert s.samples == 7
        assert s.log_level == "DEBUG"

    def test_malformed_integer_falls_back(self, monkeypatch):
        monkeypatch.setenv("QHYPER_MAX_DIM", "lots")
        assert Settings().max_dim == 200_000

    def test_validate_reports_problems(self):
        s = Settings(samples=0, threads=0)
        problems = s.validate()
        assert len(problems) == 2
        assert any("QHYPER_SAMPLES" in p for p in problems)

    def test_exact_preference(self):
        s = Settings(exact_max_degree=4, exact_max_alphabet=10)
        assert s.prefers_exact(3, 8)
        assert not s.prefers_exact(5, 8)
        assert not s.prefers_exact(3, 11)


class TestExpansionCache:
    def test_memoizes(self):
        c = ExpansionCache(max_entries=4)
        calls = []
        build = lambda: calls.append(1) or "value"
        assert c.get_or_build(build, "x", 1) == "value"
        assert c.get_or_build(build, "x", 1) == "value"
        assert len(calls) == 1
        assert c.stats()["hits"] == 1

    def test_evicts_least_recently_used(self):
        c = ExpansionCache(max_entries=2)
        c.set("a", 1)
        c.set("b", 2)
        c.get("a")
        c.set("c", 3)
        assert c.get("b") is None
        assert c.get("a") == 1
        assert c.stats()["total_entries"] == 2

    def test_disabled_cache_stores_nothing(self):
        c = ExpansionCache(max_entries=0)
        c.set("a", 1)
        assert c.get("a") is None

    def test_clear(self):
        c = ExpansionCache()
        c.set("a", 1)
        assert c.clear() == 1
        assert c.stats()["misses"] == 0


class TestModels:
    @pytest.mark.parametrize("verdict, code", [
        (Verdict.EXACT_ZERO, 0),
        (Verdict.MEMBER_EXACT, 0),
        (Verdict.MEMBER_SPECIALIZED, 0),
        (Verdict.NONMEMBER, 1),
        (Verdict.EXACT_NONZERO, 1),
        (Verdict.INCONCLUSIVE, 2),
    ])
    def test_exit_codes(self, verdict, code):
        assert verdict.exit_code == code

    def test_specialized_refutation_needs_witness(self):
        with pytest.raises(ValidationError):
            MembershipReport(verdict=Verdict.NONMEMBER, mode=Mode.SPECIALIZE, degree=2)
        report = MembershipReport(verdict=Verdict.NONMEMBER, mode=Mode.SPECIALIZE, degree=2,
                                  witness="9/4", q0=["9/4"])
        assert report.witness == "9/4"
        MembershipReport(verdict=Verdict.NONMEMBER, mode=Mode.EXACT, degree=2)

    def test_cli_config_validation(self):
        with pytest.raises(ValidationError):
            CliConfig(command="det", n=2, m=3, axis=4)
        with pytest.raises(ValidationError):
            CliConfig(command="minor", n=2, m=2, r=3)
        with pytest.raises(ValidationError):
            CliConfig(command="det", n=0, m=2)
        CliConfig(command="verify", n=2, r=3)

    def test_check_params_keep_given_sizes(self):
        config = CliConfig(command="verify", n=2, m=3, trials=5, seed=9)
        assert config.check_params() == {"n": 2, "m": 3, "trials": 5}
