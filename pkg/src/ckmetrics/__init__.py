"""CK object-oriented design metrics, threshold-region defect analysis and
regression-based defect prediction."""

__version__ = "0.1.0"
