"""Formula syntax: AST, parser, printer and syntactic analysis."""
