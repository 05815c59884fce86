"""
Main Orchestrator for the Weil character engine
Coordinates the formula engine, the numeric oracle and the identity battery
"""

import logging
import os
from datetime import datetime
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from algebra.errors import RejectedInputError, WeilError
from algebra.spgroup import SymplecticModule, element_order, enumerate_sp, sp_element, sp_random
from algebra.zmod import AdditiveCharacter
from config import Config
from tools.formatting import format_complex, format_matrix
from utils.helpers import PerformanceMonitor, create_timestamped_filename, save_json
from utils.performance import monitor_performance
from weil.character_value import CharacterValue
from weil.formulas import FormulaEngine
from weil.identities import IdentityVerifier
from weil.oracle import OracleEngine

logger = logging.getLogger(__name__)

METHODS = ("formula", "oracle", "both")


class WeilCharacterOrchestrator:
    """
    Runs the eval, verify and table workflows on one symplectic module at a time
    """

    def __init__(self):
        """Initialize the orchestrator after validating the configuration"""
        try:
            Config.validate_config()
            self.monitor = PerformanceMonitor()
            self._formulas: Dict[Any, FormulaEngine] = {}
            self._oracles: Dict[Any, OracleEngine] = {}
            logger.debug("Weil character orchestrator initialized")
        except ValueError as e:
            logger.error(f"Failed to initialize orchestrator: {str(e)}")
            raise

    @staticmethod
    def _space_key(space: SymplecticModule, s: int):
        return (space.ring.m, space.module.divisors, space.omega.gram, s % space.ring.m)

    def formula_engine(self, space: SymplecticModule, s: int = 1) -> FormulaEngine:
        key = self._space_key(space, s)
        if key not in self._formulas:
            self._formulas[key] = FormulaEngine(space, AdditiveCharacter(space.ring, s))
        return self._formulas[key]

    def oracle_engine(self, space: SymplecticModule, s: int = 1) -> OracleEngine:
        key = self._space_key(space, s)
        if key not in self._oracles:
            self._oracles[key] = OracleEngine(space, AdditiveCharacter(space.ring, s))
        return self._oracles[key]

    def _new_results(self, command: str, space: SymplecticModule, s: int) -> Dict[str, Any]:
        self.monitor.start()
        return {
            "command": command,
            "module": {"m": space.ring.m, "divisors": list(space.module.divisors), "omega": [list(r) for r in space.omega.gram]},
            "lambda_s": s,
            "timestamp": datetime.now().isoformat(),
            "workflow_status": "in_progress",
        }

    def _fail(self, results: Dict[str, Any], error: WeilError) -> Dict[str, Any]:
        logger.error(f"{results['command']} failed ({error.error_type}): {str(error)}")
        results["workflow_status"] = "failed"
        results["error"] = str(error)
        results["error_type"] = error.error_type
        return results

    @monitor_performance
    def evaluate(self, space: SymplecticModule, matrix: Sequence[Sequence[int]], s: int = 1, method: str = "formula") -> Dict[str, Any]:
        """
        Evaluate ψ(g) for one element

        Args:
            space: Symplectic module
            matrix: Row-major integer matrix of g (v ↦ v·g)
            s: Character twist, λ(r) = exp(2πi·s·r/m)
            method: formula, oracle or both

        Returns:
            Results dict; "result" holds {c, eps, complex, method, order_of_g, |V(1-g)|}
        """
        results = self._new_results("eval", space, s)
        try:
            if method not in METHODS:
                raise RejectedInputError(f"Unknown method {method!r}, choose from {list(METHODS)}")

            logger.info("Step 1: Building the symplectic element...")
            g = sp_element(space, matrix)
            self.monitor.checkpoint("element")

            value: Optional[CharacterValue] = None
            payload: Dict[str, Any] = {}
            if method in ("formula", "both"):
                logger.info("Step 2: Evaluating the closed formula...")
                value = self.formula_engine(space, s).closed_value(g)
                self.monitor.checkpoint("formula")

            if method in ("oracle", "both"):
                logger.info("Step 3: Evaluating the matrix oracle...")
                trace = self.oracle_engine(space, s).oracle_trace(g)
                self.monitor.checkpoint("oracle")
                if value is None:
                    value = CharacterValue.snap(trace, g.fixed.order, Config.ORACLE_TOLERANCE)
                else:
                    payload["oracle"] = format_complex(trace)
                    payload["residual"] = float(abs(trace - value.to_complex()))
                    if payload["residual"] >= Config.ORACLE_TOLERANCE:
                        logger.warning(f"Oracle and formula disagree, residual {payload['residual']:.3g}")

            results["result"] = {
                "c": value.c,
                "eps": str(value.eps),
                "complex": format_complex(value.to_complex()),
                "method": method,
                "order_of_g": element_order(g),
                "|V(1-g)|": g.displacement.order,
                **payload,
            }
            results["performance"] = self.monitor.get_summary()
            results["workflow_status"] = "completed"
        except WeilError as e:
            return self._fail(results, e)
        return results

    @monitor_performance
    def verify(self, space: SymplecticModule, s: int = 1, seed: Optional[int] = None, samples: Optional[int] = None) -> Dict[str, Any]:
        """
        Run the identity battery

        Args:
            space: Symplectic module
            s: Character twist
            seed: Sampling seed (Config.DEFAULT_SEED by default)
            samples: Number of random elements (Config.DEFAULT_SAMPLES by default)

        Returns:
            Results dict with "checks" (report entries), "passed" and "failed" counts
        """
        results = self._new_results("verify", space, s)
        try:
            logger.info("Step 1: Sampling elements and preparing engines...")
            verifier = IdentityVerifier(space, AdditiveCharacter(space.ring, s), seed, samples)
            results["seed"] = verifier.seed
            results["samples"] = verifier.samples
            self.monitor.checkpoint("setup")

            logger.info("Step 2: Running the identity battery...")
            checks = verifier.verify_identities()
            self.monitor.checkpoint("battery")

            results["checks"] = [c.to_report() for c in checks]
            results["failed"] = sum(1 for c in checks if not c.passed)
            results["passed"] = len(checks) - results["failed"]
            results["performance"] = self.monitor.get_summary()
            results["workflow_status"] = "completed" if results["failed"] == 0 else "checks_failed"
            logger.info(f"Verification finished: {results['passed']} passed, {results['failed']} failed")
        except WeilError as e:
            return self._fail(results, e)
        return results

    @monitor_performance
    def table(
        self,
        space: SymplecticModule,
        s: int = 1,
        enumerate_all: bool = True,
        samples: int = 10,
        seed: Optional[int] = None,
    ) -> Dict[str, Any]:
        """
        Character table rows g, order, c, eps, psi

        Args:
            space: Symplectic module
            s: Character twist
            enumerate_all: Every element of Sp(V) (small V only) instead of a sample
            samples: Number of random elements when sampling
            seed: Sampling seed

        Returns:
            Results dict with "rows" in deterministic order
        """
        results = self._new_results("table", space, s)
        try:
            logger.info("Step 1: Collecting elements...")
            if enumerate_all:
                elements = enumerate_sp(space)
            else:
                if samples < 1:
                    raise RejectedInputError(f"samples must be positive, got {samples}")
                rng = np.random.default_rng(Config.DEFAULT_SEED if seed is None else seed)
                elements = [sp_random(space, rng=rng) for _ in range(samples)]
            self.monitor.checkpoint("elements")

            logger.info(f"Step 2: Evaluating {len(elements)} character values...")
            engine = self.formula_engine(space, s)
            rows: List[Dict[str, Any]] = []
            for g in elements:
                value = engine.closed_value(g)
                rows.append({
                    "g": format_matrix(g.to_list()),
                    "order": element_order(g),
                    "c": value.c,
                    "eps": str(value.eps),
                    "psi": format_complex(value.to_complex()),
                })
            self.monitor.checkpoint("values")

            results["rows"] = rows
            results["performance"] = self.monitor.get_summary()
            results["workflow_status"] = "completed"
        except WeilError as e:
            return self._fail(results, e)
        return results

    def save_complete_results(self, results: Dict[str, Any], prefix: Optional[str] = None) -> str:
        """
        Save a results dict as JSON under Config.REPORTS_DIR

        Returns:
            Path of the saved file, empty when saving failed
        """
        filename = create_timestamped_filename(prefix or f"weil_{results.get('command', 'results')}")
        filepath = os.path.join(Config.REPORTS_DIR, filename)
        if save_json(results, filepath):
            logger.info(f"Results saved to: {filepath}")
            return filepath
        return ""


def main():
    """Evaluate a few values on the smallest fixture"""
    from tools.fixtures import fixture_space
    from utils.helpers import setup_logging

    setup_logging(Config.LOG_LEVEL, Config.LOG_FILE)
    orchestrator = WeilCharacterOrchestrator()
    space = fixture_space("Z3^2")
    for matrix in ([[1, 0], [0, 1]], [[2, 0], [0, 2]], [[1, 1], [0, 1]]):
        results = orchestrator.evaluate(space, matrix, method="both")
        if results.get("workflow_status") == "completed":
            print(f"psi({format_matrix(matrix)}) = {results['result']['complex']}")
        else:
            print(f"Evaluation failed: {results.get('error', 'Unknown error')}")


if __name__ == "__main__":
    main()
