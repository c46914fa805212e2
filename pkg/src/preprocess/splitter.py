"""
Découpage d'une enquête en phrases.
"""

import re

# Ponctuation finale et retours à la ligne ; un point entre deux chiffres
# appartient à un nombre décimal et ne coupe pas la phrase.
_BOUNDARY_RE = re.compile(r"(?:[!?;\n]|\.(?!\d)|(?<!\d)\.)+")


def split_sentences(text: str) -> list[str]:
    """
    Découpe un texte brut en phrases sur . ! ? ; et les retours à la ligne.

    Les délimiteurs et les fragments vides sont supprimés ; les abréviations
    ne sont pas traitées.

    Args:
        text: Texte brut

    Returns:
        Les phrases, dans l'ordre du texte
    """
    return [fragment.strip() for fragment in _BOUNDARY_RE.split(text) if fragment.strip()]
