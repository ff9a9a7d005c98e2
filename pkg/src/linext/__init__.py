"""Linear extensions of ACM varieties via deformations of linear syzygies."""

__version__ = "0.1.0"
