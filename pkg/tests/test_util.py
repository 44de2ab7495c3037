import logging

import pytest

from util import RamseyLogging
from util.Configurator import Configurator
from util.InstrumentationStatistics import InstrumentationStatistics, Statistic_Event_Types
from util.util import WitnessKind, ensure_parent


@pytest.fixture
def config():
    cfg = Configurator.reloadConfigFromFile()
    yield cfg
    cfg.revertToTemplate()


def test_configured_defaults(config):
    assert config.getProperty("oracle", "enumeration_budget") == 10000000
    assert config.getPropertyOr("oracle", "enumeration_budget", 5) == 5
    assert config.getPropertyOr("oracle", "enumeration_budget", None) == 10000000
    assert config.getProperty("oracle", "no_such_key") is None
    assert "solver" in config.getSections()
    assert set(config.getPropertiesForSection("solver")) == {"truncate_to_t", "log_rounds"}


def test_set_property(config):
    config.setProperty("hypergraph", "independence_cap", 3)
    assert Configurator.getConfig().getProperty("hypergraph", "independence_cap") == 3
    with pytest.raises(KeyError):
        config.setProperty("no_such_section", "key", 1)
    config.revertToTemplate()
    assert config.getProperty("hypergraph", "independence_cap") == 20


def test_statistics_count_completed_events(caplog):
    stats = InstrumentationStatistics.getStatistics()
    evt = stats.timeEventStart(Statistic_Event_Types.EVENT_VERIFY)
    assert stats.countFor(Statistic_Event_Types.EVENT_VERIFY) == 0
    stats.timeEventEnd(evt)
    assert stats.countFor(Statistic_Event_Types.EVENT_VERIFY) == 1
    with caplog.at_level(logging.INFO):
        stats.logReport()
    assert "Verifying witnesses" in caplog.text
    InstrumentationStatistics.destroyStatistics()
    assert InstrumentationStatistics.getStatistics().countFor(Statistic_Event_Types.EVENT_VERIFY) == 0


def test_witness_kind_strings():
    assert WitnessKind.numToFriendlyString(WitnessKind.COMPLETE) == "Complete"


def test_ensure_parent(tmp_path):
    target = ensure_parent(tmp_path / "a" / "b" / "c.json")
    assert target.parent.is_dir()


def test_log_handler_uses_format(tmp_path):
    path = tmp_path / "x.log"
    handler = RamseyLogging.addLogHandler(logging.FileHandler(path, encoding="utf-8"), "%(levelname)s|%(message)s")
    try:
        logging.getLogger().setLevel(logging.INFO)
        RamseyLogging.getLogger("tests.util").info("hello")
    finally:
        logging.getLogger().removeHandler(handler)
        handler.close()
    assert "INFO|hello" in path.read_text(encoding="utf-8")
