"""kripkebench: reduction passes and finite Kripke-model verification."""

__version__ = "0.1.0"
