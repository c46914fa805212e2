"""Tirage des exemples négatifs selon la distribution unigramme^0.75."""

from collections.abc import Sequence

import numpy as np

NEGATIVE_EXPONENT = 0.75


class NegativeSampler:
    """
    Échantillonneur d'indices du vocabulaire.

    Les tirages sont faits par blocs (inversion de la fonction de répartition)
    pour limiter les appels au générateur.
    """

    def __init__(
        self,
        counts: Sequence[int],
        rng: np.random.Generator,
        exponent: float = NEGATIVE_EXPONENT,
        block_size: int = 65_536,
    ):
        weights = np.asarray(counts, dtype=np.float64) ** exponent
        if weights.size == 0 or weights.sum() <= 0.0:
            raise ValueError("negative sampling needs at least one positive count")
        self.probabilities = weights / weights.sum()
        self._cdf = np.cumsum(self.probabilities)
        self._cdf[-1] = 1.0
        self.rng = rng
        self.block_size = block_size
        self._buffer: list[int] = []
        self._position = 0

    def __len__(self) -> int:
        return int(self.probabilities.size)

    def draw(self, size: int) -> np.ndarray:
        """Tire size indices indépendants."""
        indices = np.searchsorted(self._cdf, self.rng.random(size), side="right")
        return np.minimum(indices, len(self) - 1)

    def _next(self) -> int:
        if self._position >= len(self._buffer):
            self._buffer = self.draw(self.block_size).tolist()
            self._position = 0
        index = self._buffer[self._position]
        self._position += 1
        return index

    def sample(self, count: int, exclude: int) -> tuple[int, ...]:
        """
        Tire count négatifs, tous différents du mot de contexte.

        Args:
            count: Nombre de négatifs |N_{t,c}|
            exclude: Indice du mot de contexte w_c

        Returns:
            Les indices tirés (vide si le vocabulaire n'a pas d'autre mot)
        """
        if len(self) < 2:
            return ()
        negatives = []
        while len(negatives) < count:
            index = self._next()
            if index != exclude:
                negatives.append(index)
        return tuple(negatives)
