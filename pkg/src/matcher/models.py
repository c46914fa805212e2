"""Types de l'étape d'appariement phrase / attribut."""

from typing import ClassVar

from pydantic import BaseModel, ConfigDict, Field

SCORE_DECIMALS = 6


class MatchRecord(BaseModel):
    """
    Correspondance entre une phrase valide et un attribut de sa catégorie.

    Dans les fichiers, le nom d'attribut est écrit sous la clé "attribute"
    et le score avec exactement six décimales (0.8 -> 0.800000).
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    # Lu par core.jsonl.dumps_record
    fixed_decimals: ClassVar[dict[str, int]] = {"score": SCORE_DECIMALS}

    enquiry_id: str
    category_id: str
    sentence_index: int = Field(ge=0)
    attribute_name: str = Field(alias="attribute")
    score: float = Field(ge=-1.0, le=1.0)
