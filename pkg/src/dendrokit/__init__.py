__version__ = "0.1.0"


def __getattr__(name: str):
    if name == "parse_expression":
        from .expr import parse_expression

        return parse_expression
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__all__ = ["parse_expression", "__version__"]
