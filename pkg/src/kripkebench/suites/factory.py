"""Suite registry."""

from kripkebench.core.errors import SuiteError
from kripkebench.core.models import SuiteReport
from kripkebench.suites.base import Suite
from kripkebench.suites.intuitionistic import (
    BinaryEliminationSuite,
    FrameFQflSuite,
    FrameFSuite,
    GodelSuite,
    QFLMainSuite,
    QIntMainSuite,
    QKCMainSuite,
)
from kripkebench.suites.misc import OracleCrossCheckSuite, SyntaxSuite, TilingTorusSuite
from kripkebench.suites.modal import (
    AttachGLSuite,
    AttachGrzSuite,
    AttachKSuite,
    AttachKTBSuite,
    GadgetGLReflexiveSuite,
    GadgetGLSuite,
    GadgetKTBSuite,
    GuardEmbeddingSuite,
)

# Registry of available suites
_SUITES: dict[str, type[Suite]] = {
    cls().name: cls
    for cls in (
        GadgetGLSuite,
        GadgetGLReflexiveSuite,
        GadgetKTBSuite,
        GuardEmbeddingSuite,
        AttachKSuite,
        AttachGLSuite,
        AttachGrzSuite,
        AttachKTBSuite,
        FrameFSuite,
        FrameFQflSuite,
        QIntMainSuite,
        QKCMainSuite,
        QFLMainSuite,
        BinaryEliminationSuite,
        GodelSuite,
        TilingTorusSuite,
        SyntaxSuite,
        OracleCrossCheckSuite,
    )
}

# Names of the results each suite checks
_ALIASES: dict[str, str] = {
    "lemma-2.2": "gadget-gl",
    "lemma-2.2-reflexive": "gadget-gl-reflexive",
    "lemma-2.6": "gadget-ktb",
    "vp-b": "guard-embedding",
    "vp-ast-k": "attach-k",
    "vp-ast-gl": "attach-gl",
    "vp-ast-grz": "attach-grz",
    "vp-ast-ktb": "attach-ktb",
    "lemma-3.2": "binary-elimination",
}


def get_suite(name: str) -> Suite:
    """
    Get a suite instance by name.

    Aliases resolve to the suite they name.

    Raises:
        SuiteError: If the suite name is unknown
    """
    name = _ALIASES.get(name, name)
    if name not in _SUITES:
        raise SuiteError(f"Unknown suite: {name}. " f"Available: {list(_SUITES.keys())}")
    return _SUITES[name]()


def register_suite(suite_class: type[Suite]) -> None:
    """Register a custom suite under its own name."""
    _SUITES[suite_class().name] = suite_class


def list_suites() -> list[str]:
    return list(_SUITES.keys())


def suite_aliases(name: str) -> list[str]:
    return [alias for alias, target in _ALIASES.items() if target == name]


def run_suite(name: str, **params: int) -> SuiteReport:
    """
    Run a named suite with parameter overrides.

    Raises:
        SuiteError: If the name or a parameter is unknown
    """
    return get_suite(name).execute(**params)
