"""Default size budgets. All are overridable per call."""

ENUMERATION_CAP = 8
CHARACTER_CAP = 12
DENSE_BUDGET = 5040
EXACT_BUDGET = 720
ARRANGEMENT_BUDGET = 2520

AGGREGATION_TOL = 1e-8
SCREEN_TOL = 1e-6
