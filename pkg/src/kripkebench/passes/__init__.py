"""Named transformation passes and pipelines."""
