"""Independent brute-force references used to check the analytic paths."""
from .bdd import BddStats, enumerate_bdd_stats, pattern_count
from .gf import GF, field
from .mi import mc_mutual_information
from .rs import RSCode

__all__ = ["BddStats", "GF", "RSCode", "enumerate_bdd_stats", "field",
           "mc_mutual_information", "pattern_count"]
