"""
Console smoke test for the Weil character engine
"""

import sys

from config import Config
from orchestrator import WeilCharacterOrchestrator
from tools.fixtures import FIXTURES, fixture_space
from tools.formatting import format_matrix
from utils.helpers import PerformanceMonitor, setup_logging
from utils.performance import MemoryMonitor

SMOKE_ELEMENTS = {
    "Z3^2": [[[1, 0], [0, 1]], [[2, 0], [0, 2]], [[1, 1], [0, 1]], [[0, 1], [2, 0]]],
    "Z5^2": [[[1, 0], [0, 1]], [[4, 0], [0, 4]], [[0, 1], [4, 0]], [[2, 0], [0, 3]]],
    "Z9^2": [[[1, 0], [0, 1]], [[8, 0], [0, 8]], [[1, 3], [0, 1]], [[2, 0], [0, 5]]],
}


def test_configuration():
    """Test system configuration"""
    print("=" * 60)
    print("🔧 TESTING SYSTEM CONFIGURATION")
    print("=" * 60)

    try:
        Config.validate_config()
        print("✅ Configuration validation passed")
        for key, value in Config.get_settings_status().items():
            print(f"   {key}: {value}")
        return True
    except ValueError as e:
        print(f"❌ Configuration validation failed: {str(e)}")
        print("\nCheck the WEIL_* variables in your .env file")
        return False


def test_evaluation(orchestrator, method="formula"):
    """Evaluate the smoke elements on the small fixtures"""
    print("\n" + "=" * 60)
    print(f"📐 TESTING EVALUATION - {method}")
    print("=" * 60)

    monitor = PerformanceMonitor()
    monitor.start()
    ok = True
    try:
        for name, matrices in SMOKE_ELEMENTS.items():
            space = fixture_space(name)
            for matrix in matrices:
                results = orchestrator.evaluate(space, matrix, method=method)
                if results.get("workflow_status") == "completed":
                    r = results["result"]
                    extra = f"  residual {r['residual']:.2e}" if "residual" in r else ""
                    print(f"✅ {name} g={format_matrix(matrix)}: psi = {r['eps']}·√{r['c']} = {r['complex']}{extra}")
                else:
                    ok = False
                    print(f"❌ {name} g={format_matrix(matrix)}: {results.get('error', 'Unknown error')}")
            monitor.checkpoint(name)
        return ok
    finally:
        perf_summary = monitor.get_summary()
        print(f"\n⏱️  PERFORMANCE SUMMARY:")
        print(f"   Total Time: {perf_summary.get('total_time', 0):.2f} seconds")
        print(f"   Memory: {MemoryMonitor().get_performance_stats()['current_memory_mb']} MB")


def test_verification(orchestrator, fixture="Z3^2", samples=20):
    """Run the identity battery on one fixture"""
    print("\n" + "=" * 60)
    print(f"🧪 TESTING IDENTITY BATTERY - {fixture}")
    print("=" * 60)

    results = orchestrator.verify(fixture_space(fixture), samples=samples)
    if "checks" not in results:
        print(f"❌ Verification failed: {results.get('error', 'Unknown error')}")
        return False
    print(f"   Checks run: {len(results['checks'])}")
    print(f"   Passed: {results['passed']}")
    print(f"   Failed: {results['failed']}")
    for entry in results["checks"]:
        if not entry["pass"]:
            print(f"❌ {entry['check']} {entry['params']}: expected {entry['expected']}, got {entry['got']}")
    if results["failed"] == 0:
        print("✅ Every identity holds")
    return results["failed"] == 0


def test_table(orchestrator, fixture="Z3^2"):
    """Print the character table of a small fixture"""
    print("\n" + "=" * 60)
    print(f"📋 CHARACTER TABLE - {fixture}")
    print("=" * 60)

    results = orchestrator.table(fixture_space(fixture))
    if results.get("workflow_status") != "completed":
        print(f"❌ Table failed: {results.get('error', 'Unknown error')}")
        return False
    for row in results["rows"]:
        print(f"   {row['g']:<20} order {row['order']:<3} c {row['c']:<3} eps {row['eps']:<3} psi {row['psi']}")
    print(f"✅ {len(results['rows'])} elements")
    return True


def run_comprehensive_test():
    """Run comprehensive system test"""
    print("🧪 WEIL CHARACTER ENGINE - COMPREHENSIVE TEST")
    print("=" * 70)

    setup_logging("WARNING")

    if not test_configuration():
        print("\n❌ SYSTEM TEST FAILED - Configuration issues")
        return False

    orchestrator = WeilCharacterOrchestrator()
    evaluation_success = test_evaluation(orchestrator, "both")
    verification_success = test_verification(orchestrator)

    print("\n" + "=" * 70)
    if evaluation_success and verification_success:
        print("🎉 ALL TESTS PASSED - SYSTEM READY FOR USE!")
    else:
        print("❌ SYSTEM TEST FAILED - Please address issues above")
    print("=" * 70)

    return evaluation_success and verification_success


def main():
    """Main test function"""
    if len(sys.argv) > 1:
        mode = sys.argv[1].lower()
        setup_logging("WARNING")

        if mode == "config":
            test_configuration()
        elif mode in ("formula", "oracle"):
            test_evaluation(WeilCharacterOrchestrator(), mode)
        elif mode == "verify":
            fixture = sys.argv[2] if len(sys.argv) > 2 else "Z3^2"
            if fixture not in FIXTURES:
                print(f"Unknown fixture {fixture}, choose from {', '.join(FIXTURES)}")
                return
            test_verification(WeilCharacterOrchestrator(), fixture)
        elif mode == "table":
            test_table(WeilCharacterOrchestrator(), sys.argv[2] if len(sys.argv) > 2 else "Z3^2")
        else:
            print("Usage: python test_system.py [config|formula|oracle|verify [fixture]|table [fixture]]")
    else:
        run_comprehensive_test()


if __name__ == "__main__":
    main()
