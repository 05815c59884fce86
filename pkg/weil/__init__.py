"""
Weil character values by closed formula and by matrix oracle
"""
from .character_value import CharacterValue
from .formulas import FormulaEngine
from .identities import CheckResult, IdentityVerifier, verify_identities
from .oracle import OracleEngine

__all__ = ['CharacterValue', 'CheckResult', 'FormulaEngine', 'IdentityVerifier', 'OracleEngine', 'verify_identities']
