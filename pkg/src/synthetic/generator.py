"""
Génération d'un corpus synthétique avec des attributs importants connus.

Chaque catégorie reçoit `attributes` attributs dont `important` sont
désignés : seules leurs valeurs sont citées dans les enquêtes, telles
qu'elles figurent dans le graphe. Une phrase produit cite deux valeurs d'un
même attribut ("Do you have bakimo or tesula?") ; l'attribut de poids est
cité sous forme de nombre et d'unité ("About 12.5 kg each."). Deux
attributs non désignés portent des noms ("quality", "price") présents dans
les phrases de politesse commerciale. Chaque enquête commence par une
phrase de salutation et les valeurs citées sont mal orthographiées avec la
probabilité misspelling_rate.

Les valeurs sont des pseudo-mots à distance d'édition >= 3 les uns des
autres, pour qu'une faute d'une lettre se corrige vers le bon mot.
"""

import json
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..core.jsonl import write_records
from ..core.logging import get_logger
from ..kg_store.models import AttributeRecord, CategoryRecord, EnquiryRecord, LabelRecord
from ..preprocess.resources import load_stop_words
from ..preprocess.spelling import levenshtein

_CONSONANTS = "bdfgklmnprstvz"
_VOWELS = "aeiou"

DESIGNATED_NAMES = (
    "color", "material", "style", "pattern", "finish", "shape", "capacity",
    "voltage", "brand", "usage", "feature", "certification", "origin",
    "thickness", "length", "width", "surface", "grade", "fabric", "technique",
)
FILLER_NAMES = ("quality", "price")
OTHER_NAMES = ("packing", "warranty", "standard", "application", "season", "theme")

GREETINGS = (
    "Hello, my name is {person}.",
    "Dear sir, this is {person} from a trading company.",
    "Hi, greetings from {person}.",
    "Good day, I am {person}, purchasing manager.",
)
FILLERS = (
    "Please send your best price and good quality.",
    "Kindly quote the best price with good quality.",
    "Good quality and competitive price please.",
)
FILLER_RATE = 0.2
PRODUCT_SENTENCES = 3

# Cadres faits uniquement de mots vides : seules les valeurs restent après nettoyage
PRODUCT_TEMPLATES = (
    "Do you have {first} or {second}?",
    "Can we have {first} and {second}?",
    "What about {first} or {second}?",
    "Do you have it in {first} and {second}?",
)
WEIGHT_TEMPLATES = (
    "About {weight} each.",
    "Do you have {weight}?",
    "Is it {weight}?",
)
PERSONS = ("john", "maria", "ahmed", "chen", "olga", "pedro", "fatima", "kenji")
WEIGHT_NAME = "weight"
WEIGHT_VALUES = ("5 kg", "10 kg", "25 kg", "50 kg")
WEIGHT_UNITS = ("kg", " kg", " KG", "kgs")

_FIXED_WORDS = (
    DESIGNATED_NAMES + FILLER_NAMES + OTHER_NAMES + PERSONS + (WEIGHT_NAME,)
    + tuple(
        word.strip(".,?").lower()
        for text in GREETINGS + FILLERS + PRODUCT_TEMPLATES + WEIGHT_TEMPLATES
        for word in text.split()
        if "{" not in word
    )
)


@dataclass
class SyntheticAttribute:
    name: str
    values: list[str]
    designated: bool = False
    numeric: bool = False


@dataclass
class SyntheticCorpus:
    categories: list[CategoryRecord]
    enquiries: list[EnquiryRecord]
    labels: list[LabelRecord]


class CorpusGenerator:
    """
    Générateur déterministe pour une graine donnée.

    Exemple d'utilisation:
        corpus = CorpusGenerator(seed=7).generate()
    """

    def __init__(
        self,
        categories: int = 20,
        attributes: int = 8,
        important: int = 5,
        enquiries_per_category: int = 500,
        misspelling_rate: float = 0.1,
        seed: int = 7,
        values_per_attribute: int = 4,
    ):
        if not 1 <= important <= attributes:
            raise ValueError("important must be between 1 and the number of attributes")
        if attributes - important > len(FILLER_NAMES) + len(OTHER_NAMES):
            limit = len(FILLER_NAMES) + len(OTHER_NAMES)
            raise ValueError(f"at most {limit} non-important attributes")
        if important > len(DESIGNATED_NAMES) + 1:
            raise ValueError(f"at most {len(DESIGNATED_NAMES) + 1} important attributes")
        if values_per_attribute < 1:
            raise ValueError("values_per_attribute must be at least 1")
        self.category_count = categories
        self.attribute_count = attributes
        self.important = important
        self.enquiries_per_category = enquiries_per_category
        self.misspelling_rate = misspelling_rate
        self.values_per_attribute = values_per_attribute
        self.rng = np.random.default_rng(seed)
        # Les pseudo-mots restent loin des mots fixes et des mots vides
        fixed = (*_FIXED_WORDS, *sorted(load_stop_words().words))
        self._words: list[str] = list(dict.fromkeys(fixed))

    # === PSEUDO-MOTS ===

    def _is_distinct(self, candidate: str) -> bool:
        return all(levenshtein(candidate, word, max_distance=2) is None for word in self._words)

    def _pick(self, items: Sequence[str]) -> str:
        return items[int(self.rng.integers(len(items)))]

    def pseudo_word(self) -> str:
        """Pseudo-mot de trois syllabes à distance >= 3 de tous les mots déjà produits."""
        while True:
            syllables = []
            for _ in range(3):
                syllable = self._pick(_CONSONANTS) + self._pick(_VOWELS)
                if self.rng.random() < 0.3:
                    syllable += self._pick(_CONSONANTS)
                syllables.append(syllable)
            candidate = "".join(syllables)
            if self._is_distinct(candidate):
                self._words.append(candidate)
                return candidate

    def misspell(self, word: str) -> str:
        """Une suppression, insertion ou substitution hors de la première lettre."""
        position = int(self.rng.integers(1, len(word)))
        letter = self._pick(_CONSONANTS + _VOWELS)
        operation = int(self.rng.integers(3))
        if operation == 0:
            return word[:position] + word[position + 1 :]
        if operation == 1:
            return word[:position] + letter + word[position:]
        if letter == word[position]:
            letter = "x"
        return word[:position] + letter + word[position + 1 :]

    # === GRAPHE ===

    def build_attributes(self, index: int) -> list[SyntheticAttribute]:
        names = list(DESIGNATED_NAMES)
        offset = (index * 3) % len(names)
        names = names[offset:] + names[:offset]

        attributes: list[SyntheticAttribute] = []
        for position in range(self.important):
            if position == 1:
                attributes.append(
                    SyntheticAttribute(
                        name=WEIGHT_NAME,
                        values=list(WEIGHT_VALUES),
                        designated=True,
                        numeric=True,
                    )
                )
                continue
            attributes.append(
                SyntheticAttribute(
                    name=names.pop(0),
                    values=[self.pseudo_word() for _ in range(self.values_per_attribute)],
                    designated=True,
                )
            )

        for name in (FILLER_NAMES + OTHER_NAMES)[: self.attribute_count - self.important]:
            attributes.append(
                SyntheticAttribute(
                    name=name,
                    values=[self.pseudo_word() for _ in range(self.values_per_attribute)],
                )
            )
        return attributes

    # === ENQUÊTES ===

    def _weight(self) -> str:
        if self.rng.random() < 0.5:
            number = f"{self.rng.integers(1, 100)}"
        else:
            number = f"{self.rng.uniform(1, 60):.1f}"
        return f"{number}{self._pick(WEIGHT_UNITS)}"

    def _value(self, word: str) -> str:
        if self.rng.random() < self.misspelling_rate:
            return self.misspell(word)
        return word

    def product_sentence(self, attribute: SyntheticAttribute) -> str:
        """Une phrase qui ne cite qu'un seul attribut désigné."""
        if attribute.numeric:
            return self._pick(WEIGHT_TEMPLATES).format(weight=self._weight())
        size = min(2, len(attribute.values))
        chosen = self.rng.choice(len(attribute.values), size=size, replace=False)
        words = [self._value(attribute.values[int(i)]) for i in chosen]
        if len(words) == 1:
            return f"Do you have {words[0]}?"
        return self._pick(PRODUCT_TEMPLATES).format(first=words[0], second=words[1])

    def enquiry_text(self, attributes: list[SyntheticAttribute]) -> str:
        designated = [attribute for attribute in attributes if attribute.designated]
        sentences = [
            self._pick(GREETINGS).format(person=self._pick(PERSONS).title())
        ]
        if self.rng.random() < FILLER_RATE:
            sentences.append(self._pick(FILLERS))
        count = min(PRODUCT_SENTENCES, len(designated))
        for index in self.rng.choice(len(designated), size=count, replace=False):
            sentences.append(self.product_sentence(designated[int(index)]))

        text = " ".join(sentences)
        if self.rng.random() < 0.1:
            text = "<p>" + "</p><p>".join(sentences) + "</p>"
        return text

    def spam_text(self) -> str:
        return "Visit http://spam.example http://spam.example/a www.spam.example now!!!"

    def generate(self) -> SyntheticCorpus:
        """Génère les catégories, les enquêtes et les annotations."""
        categories, enquiries, labels = [], [], []
        for index in range(self.category_count):
            category_id = f"cat{index:02d}"
            attributes = self.build_attributes(index)
            categories.append(
                CategoryRecord(
                    category_id=category_id,
                    attributes=[
                        AttributeRecord(name=attribute.name, values=attribute.values)
                        for attribute in attributes
                    ],
                )
            )
            labels.append(
                LabelRecord(
                    category_id=category_id,
                    important_attributes=[a.name for a in attributes if a.designated],
                )
            )
            for number in range(self.enquiries_per_category):
                text = self.spam_text() if number % 100 == 99 else self.enquiry_text(attributes)
                enquiries.append(
                    EnquiryRecord(
                        enquiry_id=f"{category_id}-{number:05d}",
                        category_id=category_id,
                        text=text,
                    )
                )
        return SyntheticCorpus(categories, enquiries, labels)


@dataclass
class GeneratedFiles:
    categories: Path
    enquiries: Path
    labels: Path
    config: Path


def generate_corpus(
    out_dir: str | Path,
    categories: int = 20,
    attributes: int = 8,
    important: int = 5,
    enquiries_per_category: int = 500,
    misspelling_rate: float = 0.1,
    seed: int = 7,
    logger: logging.Logger | None = None,
) -> GeneratedFiles:
    """
    Écrit un corpus synthétique et une configuration prête à l'emploi.

    Args:
        out_dir: Répertoire de sortie
        categories: Nombre de catégories
        attributes: Attributs par catégorie
        important: Attributs désignés par catégorie
        enquiries_per_category: Enquêtes par catégorie
        misspelling_rate: Probabilité de faute sur une valeur citée
        seed: Graine du générateur (et de l'entraînement dans la configuration)
        logger: Logger recevant le résumé

    Returns:
        Les chemins des fichiers écrits
    """
    logger = logger or get_logger("synthetic")
    out_dir = Path(out_dir)
    corpus = CorpusGenerator(
        categories, attributes, important, enquiries_per_category, misspelling_rate, seed
    ).generate()

    files = GeneratedFiles(
        categories=out_dir / "categories.jsonl",
        enquiries=out_dir / "enquiries.jsonl",
        labels=out_dir / "labels.jsonl",
        config=out_dir / "config.json",
    )
    write_records(files.categories, corpus.categories)
    write_records(files.enquiries, corpus.enquiries)
    write_records(files.labels, corpus.labels)

    config = {
        "paths": {
            "categories": files.categories.name,
            "enquiries": files.enquiries.name,
            "labels": files.labels.name,
            "workdir": "work",
        },
        "embedding": {"dim": 50, "bucket_count": 50_000, "epochs": 5, "seed": seed},
        "seed": seed,
    }
    with files.config.open("w", encoding="utf-8") as f:
        json.dump(config, f, indent=2)
        f.write("\n")

    logger.info(
        f"Generated {len(corpus.categories)} categories and {len(corpus.enquiries)} "
        f"enquiries in '{out_dir}'"
    )
    return files
