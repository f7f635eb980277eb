import re

_DIGITS = re.compile(r"(\d+)")


def natural_key(ident: str):
    """Sort key ordering ``s2`` before ``s10``."""
    return [(0, int(tok), "") if tok.isdigit() else (1, 0, tok) for tok in _DIGITS.split(str(ident)) if tok]
