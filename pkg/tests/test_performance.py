from config import Config
from utils.performance import MemoryMonitor, monitor_performance


class TestMemoryMonitor:
    def test_limit_read_from_config(self, monkeypatch):
        monitor = MemoryMonitor()
        monkeypatch.setattr(Config, "MEMORY_LIMIT_MB", 1)
        assert monitor.check_memory_limit() is False
        monkeypatch.setattr(Config, "MEMORY_LIMIT_MB", 10**9)
        assert monitor.check_memory_limit() is True

    def test_explicit_limit_wins(self, monkeypatch):
        monkeypatch.setattr(Config, "MEMORY_LIMIT_MB", 10**9)
        assert MemoryMonitor().check_memory_limit(limit_mb=1) is False

    def test_stats_track_peak(self):
        monitor = MemoryMonitor()
        stats = monitor.get_performance_stats()
        assert stats["peak_memory_mb"] >= stats["current_memory_mb"] > 0


def test_decorator_passes_results_through(monkeypatch):
    monkeypatch.setattr(Config, "MEMORY_LIMIT_MB", 1)

    @monitor_performance
    def workflow(x):
        return {"value": x}

    assert workflow(3) == {"value": 3}
