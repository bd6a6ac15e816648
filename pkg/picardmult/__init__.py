'''
Copyright (C) 2026 picardmult developers

Please see the LICENSE file for the terms and conditions
associated with this software.
'''
__version__ = '0.1.0'
