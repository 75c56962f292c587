"""Factory for creating transformation passes."""

from kripkebench.core.errors import PassError
from kripkebench.passes.base import Pass
from kripkebench.passes.builtin import (
    AttachPass,
    BfPass,
    EliminateBinaryPass,
    EmbedEPass,
    EncodeTilingPass,
    ExpandPropPass,
    ExtendGuardPass,
    GodelPass,
    MstarIntPass,
    PrimePass,
    ReadBackPass,
    RestrictGuardPass,
    SibPass,
    StarIntPass,
    StarPass,
)

# Registry of available passes
_PASSES: dict[str, type[Pass]] = {
    "prime": PrimePass,
    "star": StarPass,
    "embed-e": EmbedEPass,
    "bf": BfPass,
    "encode-tiling": EncodeTilingPass,
    "eliminate-binary": EliminateBinaryPass,
    "expand-prop": ExpandPropPass,
    "star-int": StarIntPass,
    "godel": GodelPass,
    "sib": SibPass,
    "extend-guard": ExtendGuardPass,
    "restrict-guard": RestrictGuardPass,
    "attach": AttachPass,
    "read-back": ReadBackPass,
    "mstar-int": MstarIntPass,
}


def get_pass(name: str, **params: str) -> Pass:
    """
    Get a pass instance by name.

    Args:
        name: Registered pass name
        **params: Pass parameters as strings

    Returns:
        Pass instance

    Raises:
        PassError: If the name is not registered or a parameter is not accepted
    """
    if name not in _PASSES:
        raise PassError(
            f"Unknown pass: {name}. "
            f"Available: {list(_PASSES.keys())}"
        )

    return _PASSES[name](**params)


def register_pass(name: str, pass_class: type[Pass]) -> None:
    """
    Register a new pass.

    Args:
        name: Name used in pipelines
        pass_class: Pass class to register
    """
    _PASSES[name] = pass_class


def list_passes() -> list[str]:
    """List available pass names."""
    return list(_PASSES.keys())
