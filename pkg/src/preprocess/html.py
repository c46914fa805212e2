"""
Conversion du HTML des enquêtes en texte brut.
"""

import html
import re

_SCRIPT_RE = re.compile(r"<(script|style)\b[^>]*>.*?</\1\s*>", re.IGNORECASE | re.DOTALL)
_COMMENT_RE = re.compile(r"<!--.*?-->", re.DOTALL)
_HTML_TAG_RE = re.compile(r"</?[A-Za-z][^>]*>")
_LINE_BREAKS_RE = re.compile(r"[ \t\r\f\v]*\n\s*")


def strip_html(raw: str) -> str:
    """
    Retire les balises HTML d'une enquête.

    Les blocs de texte délimités par des balises sont séparés par un seul
    retour à la ligne et les entités sont décodées ("a&amp;b<br>c" -> "a&b\\nc").
    Le balisage mal formé est toléré : les balises orphelines disparaissent,
    leur contenu est conservé.

    Args:
        raw: Texte de l'enquête, HTML autorisé

    Returns:
        Le texte brut
    """
    text = raw
    if "<" in text:
        text = _SCRIPT_RE.sub("\n", text)
        text = _COMMENT_RE.sub("\n", text)
        text = _HTML_TAG_RE.sub("\n", text)
    # Décodé après le retrait des balises : "&lt;b&gt;" reste du texte
    text = html.unescape(text)
    return _LINE_BREAKS_RE.sub("\n", text).strip()
