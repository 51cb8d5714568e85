"""Masked-variant construction: one variant per phrase, built by removal."""

from __future__ import annotations

from dataclasses import dataclass

from ..records import Generation, PhraseSegmentation


@dataclass(frozen=True, slots=True)
class MaskedVariant:
    """The answer text with one phrase's tokens removed.

    masked_text is the verbatim concatenation of the surviving token texts,
    matching the detokenization rule; masking a single-phrase answer yields
    an empty string.
    """

    phrase_index: int
    masked_text: str


def build_masked_variants(
    gen: Generation, seg: PhraseSegmentation
) -> list[MaskedVariant]:
    if seg.num_tokens != gen.length:
        raise ValueError(
            f"segmentation covers {seg.num_tokens} tokens, "
            f"generation has {gen.length}"
        )
    variants: list[MaskedVariant] = []
    for k, (start, end) in enumerate(seg.spans):
        kept = gen.tokens[:start] + gen.tokens[end:]
        masked_text = "".join(token.text for token in kept)
        variants.append(MaskedVariant(phrase_index=k, masked_text=masked_text))
    return variants
