"""R-matrices, reflection-equation solutions and coideal checks on the vector representation."""
from .groups import GroupSpec, build_R, reflection_check, yang_baxter_check
from .matrix import CheckReport, QMatrix

__all__ = ["CheckReport", "GroupSpec", "QMatrix", "build_R", "reflection_check", "yang_baxter_check"]
