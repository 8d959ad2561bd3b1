"""Exception hierarchy. Every error carries a short machine code used by the CLI."""


class PsiAutError(Exception):
    code = "error"


class PoleProximityError(PsiAutError, ValueError):
    code = "pole-proximity"


class DegenerateInputError(PsiAutError, ValueError):
    code = "degenerate-input"


class ValidationError(PsiAutError, ValueError):
    code = "validation"


class DuplicatePointError(ValidationError):
    code = "duplicate-point"


class ModulusError(ValidationError):
    code = "modulus-out-of-range"


class SingularityProximityError(PsiAutError, ValueError):
    code = "singularity-proximity"


class IllConditionedContourError(PsiAutError, ValueError):
    code = "ill-conditioned-contour"


class EmptyGridError(PsiAutError, ValueError):
    code = "empty-grid"


class OutOfRangeError(PsiAutError, ValueError):
    code = "out-of-range"


class UnsupportedConfigurationError(PsiAutError):
    code = "unsupported-configuration"
