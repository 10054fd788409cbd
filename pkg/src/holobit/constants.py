"""Shared constants, natural units with hbar = 1."""

import math

HBAR = 1.0
H_PLANCK = 2.0 * math.pi * HBAR
LN2 = math.log(2.0)
