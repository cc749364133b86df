"""Core engines: formulas, semantics, moments, quasimodels and the decision procedure."""
