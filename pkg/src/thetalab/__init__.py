"""Exact computational backend for GSp4 mod-p weight combinatorics.

Subpackages:

- ``weights``: root datum, Weyl group, alcoves, affine linkage, Weyl-module
  Jordan-Holder data and BGG/Hodge weight bookkeeping.
- ``uea``: exact universal-enveloping-algebra kernel for sp4 (PBW normal
  forms, Verma modules, singular vectors, characteristic-p linkage maps).
- ``thetalocal``: polynomial model of the theta operators and Hasse
  invariants on the ordinary chart and the truncated p-rank-1 chart.
- ``serre``: tame inertial types, Herzig-set combinatorics, entailment,
  Fontaine-Laffaille predicates and operator-recipe weight paths.
- ``cli``: command-line front end.
"""

__version__ = "0.1.0"
