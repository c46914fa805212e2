"""
Correction orthographique par recherche floue (distance de Levenshtein).

La recherche floue n'est utilisée que si le token est absent du vocabulaire.
La distance admise dépend de la longueur du token : 1 jusqu'à 5 caractères,
2 au-delà. Les égalités sont départagées par la fréquence dans le corpus
(la plus haute gagne), puis par l'ordre lexicographique.
"""

from collections import defaultdict
from collections.abc import Mapping, Set


def levenshtein(s1: str, s2: str, max_distance: int | None = None) -> int | None:
    """
    Distance d'édition entre deux chaînes (programmation dynamique sur deux lignes).

    Args:
        s1: Première chaîne
        s2: Seconde chaîne
        max_distance: Borne optionnelle ; le calcul s'arrête dès qu'elle est dépassée

    Returns:
        La distance, ou None si elle dépasse max_distance
    """
    if s1 == s2:
        return 0
    m, n = len(s1), len(s2)
    if m > n:
        s1, s2, m, n = s2, s1, n, m
    if max_distance is not None and n - m > max_distance:
        return None

    prev = list(range(n + 1))
    curr = [0] * (n + 1)

    for i in range(1, m + 1):
        curr[0] = i
        row_min = i
        for j in range(1, n + 1):
            if s1[i - 1] == s2[j - 1]:
                curr[j] = prev[j - 1]
            else:
                curr[j] = 1 + min(prev[j], curr[j - 1], prev[j - 1])
            if curr[j] < row_min:
                row_min = curr[j]
        if max_distance is not None and row_min > max_distance:
            return None
        prev, curr = curr, prev

    distance = prev[n]
    if max_distance is not None and distance > max_distance:
        return None
    return distance


def max_edit_distance(token: str) -> int:
    """Distance maximale admise pour corriger un token."""
    return 1 if len(token) <= 5 else 2


class SpellingCorrector:
    """
    Correcteur orthographique sur un vocabulaire fixe.

    Le vocabulaire est indexé par longueur de mot : seuls les candidats dont
    la longueur est compatible avec la borne sont comparés. Les corrections
    sont mémorisées.
    """

    def __init__(self, vocabulary: Mapping[str, int] | Set[str]):
        """
        Args:
            vocabulary: Tokens connus, avec leur fréquence dans le corpus si disponible
        """
        if isinstance(vocabulary, Mapping):
            self.frequencies: dict[str, int] = dict(vocabulary)
        else:
            self.frequencies = dict.fromkeys(vocabulary, 0)

        by_length: dict[int, list[str]] = defaultdict(list)
        for word in sorted(self.frequencies):
            by_length[len(word)].append(word)
        self._by_length = dict(by_length)
        self._cache: dict[str, str] = {}

    def __contains__(self, token: object) -> bool:
        return token in self.frequencies

    def correct(self, token: str) -> str:
        """
        Corrige un token (déjà en casse repliée).

        Returns:
            Le token inchangé s'il est connu ou si aucun candidat n'est assez
            proche, sinon le meilleur candidat du vocabulaire
        """
        if token in self.frequencies:
            return token
        cached = self._cache.get(token)
        if cached is not None:
            return cached

        bound = max_edit_distance(token)
        best: tuple[int, int, str] | None = None
        for length in range(max(len(token) - bound, 0), len(token) + bound + 1):
            for candidate in self._by_length.get(length, ()):
                distance = levenshtein(token, candidate, bound)
                if distance is None:
                    continue
                key = (distance, -self.frequencies[candidate], candidate)
                if best is None or key < best:
                    best = key

        corrected = best[2] if best is not None else token
        self._cache[token] = corrected
        return corrected


def correct_spelling(token: str, vocab: Mapping[str, int] | Set[str]) -> str:
    """
    Corrige un token contre un vocabulaire.

    Args:
        token: Token en casse repliée
        vocab: Tokens connus (avec fréquences pour départager les égalités)

    Returns:
        Le token corrigé, ou inchangé
    """
    return SpellingCorrector(vocab).correct(token)
