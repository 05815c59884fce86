"""
Tools package for the Weil character engine
"""
from .fixtures import FIXTURES, ModuleDescription, build_space, fixture_space, parse_matrix_arg, parse_module_arg
from .formatting import format_complex, format_matrix, report_frame, table_frame, write_csv

__all__ = [
    'FIXTURES',
    'ModuleDescription',
    'build_space',
    'fixture_space',
    'format_complex',
    'format_matrix',
    'parse_matrix_arg',
    'parse_module_arg',
    'report_frame',
    'table_frame',
    'write_csv',
]
