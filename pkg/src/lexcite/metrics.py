"""The 12 per-article linguistic-complexity variables.

Syntactic side: mean and standard deviation of sentence length (words per
sentence) and the clause ratio. Lexical side: type/token ratio, mean word
length per lexical class (sophistication), and the share of word tokens per
lexical class (density).

Conventions, recorded in output metadata so alternates can be compared:
sentence length counts word tokens only; the standard deviation uses the
n-1 denominator (0 for single-sentence documents); TTR lowercases surfaces
and removes no stopwords; word length counts alphabetic characters only; a
lexical class with no tokens yields an Absent value, not 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import EmptyDocument
from .tagging import LexClass, TaggedDocument, TaggedSentence

# CSV column order for the profile table (after doc_id).
VARIABLE_COLUMNS = ("x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8",
                    "x9", "x10", "x11", "x12")

VARIABLE_FIELDS = {
    "x1": "mean_sentence_length",
    "x2": "sd_sentence_length",
    "x3": "clause_ratio",
    "x4": "ttr",
    "x5": "noun_length",
    "x6": "verb_length",
    "x7": "adj_length",
    "x8": "adv_length",
    "x9": "noun_ratio",
    "x10": "verb_ratio",
    "x11": "adj_ratio",
    "x12": "adv_ratio",
}

VARIABLE_LABELS = {
    "x1": "mean sentence length",
    "x2": "sd sentence length",
    "x3": "clause ratio",
    "x4": "type-token ratio",
    "x5": "noun length",
    "x6": "verb length",
    "x7": "adjective length",
    "x8": "adverb length",
    "x9": "noun ratio",
    "x10": "verb ratio",
    "x11": "adjective ratio",
    "x12": "adverb ratio",
}


@dataclass
class ComplexityProfile:
    """All 12 variables for one article. None marks an Absent sophistication
    value (the lexical class had no tokens)."""

    doc_id: str
    mean_sentence_length: float
    sd_sentence_length: float
    clause_ratio: float
    ttr: float
    noun_length: float | None
    verb_length: float | None
    adj_length: float | None
    adv_length: float | None
    noun_ratio: float
    verb_ratio: float
    adj_ratio: float
    adv_ratio: float

    def value(self, column: str) -> float | None:
        return getattr(self, VARIABLE_FIELDS[column])

    def values(self) -> list[float | None]:
        return [self.value(c) for c in VARIABLE_COLUMNS]

    def has_absent(self) -> bool:
        return any(v is None for v in self.values())


def _retained(doc: TaggedDocument) -> list[TaggedSentence]:
    kept = [s for s in doc.sentences if s.word_count >= 1]
    if not kept:
        raise EmptyDocument(f"document {doc.doc_id!r} has no sentence with a word token")
    return kept


def _word_tokens(doc: TaggedDocument):
    return [tt for s in doc.sentences for tt in s.tokens if tt.token.is_word]


def sentence_length_stats(doc: TaggedDocument) -> tuple[float, float]:
    """Mean and sample (n-1) standard deviation of per-sentence word counts.

    Sentences without word tokens are excluded first; a single retained
    sentence yields sd 0.
    """
    counts = [s.word_count for s in _retained(doc)]
    n = len(counts)
    mean = sum(counts) / n
    if n == 1:
        return mean, 0.0
    var = sum((c - mean) ** 2 for c in counts) / (n - 1)
    return mean, math.sqrt(var)


def clause_ratio(doc: TaggedDocument) -> float:
    """Total clause count divided by the number of retained sentences."""
    kept = _retained(doc)
    return sum(s.clause_count for s in kept) / len(kept)


def type_token_ratio(doc: TaggedDocument) -> float:
    """Distinct lowercased word surfaces over word tokens."""
    words = _word_tokens(doc)
    if not words:
        raise EmptyDocument(f"document {doc.doc_id!r} has no word tokens")
    surfaces = [tt.token.surface.lower() for tt in words]
    return len(set(surfaces)) / len(surfaces)


def lexical_sophistication(doc: TaggedDocument, lex_class: LexClass) -> float | None:
    """Mean alphabetic character length of word tokens in the class, or
    None (Absent) when the class has no tokens."""
    lengths = [tt.token.char_length for tt in _word_tokens(doc) if tt.lex_class == lex_class]
    if not lengths:
        return None
    return sum(lengths) / len(lengths)


def lexical_density(doc: TaggedDocument, lex_class: LexClass) -> float:
    """Share of word tokens belonging to the class."""
    words = _word_tokens(doc)
    if not words:
        raise EmptyDocument(f"document {doc.doc_id!r} has no word tokens")
    return sum(1 for tt in words if tt.lex_class == lex_class) / len(words)


def complexity_profile(doc: TaggedDocument) -> ComplexityProfile:
    """Assemble all 12 variables for one document."""
    mean_len, sd_len = sentence_length_stats(doc)
    return ComplexityProfile(
        doc_id=doc.doc_id,
        mean_sentence_length=mean_len,
        sd_sentence_length=sd_len,
        clause_ratio=clause_ratio(doc),
        ttr=type_token_ratio(doc),
        noun_length=lexical_sophistication(doc, LexClass.NOUN),
        verb_length=lexical_sophistication(doc, LexClass.VERB),
        adj_length=lexical_sophistication(doc, LexClass.ADJECTIVE),
        adv_length=lexical_sophistication(doc, LexClass.ADVERB),
        noun_ratio=lexical_density(doc, LexClass.NOUN),
        verb_ratio=lexical_density(doc, LexClass.VERB),
        adj_ratio=lexical_density(doc, LexClass.ADJECTIVE),
        adv_ratio=lexical_density(doc, LexClass.ADVERB),
    )


def profile_to_row(profile: ComplexityProfile) -> list:
    return [profile.doc_id] + profile.values()


def profile_from_row(row: list[str]) -> ComplexityProfile:
    values = [float(cell) if cell != "" else None for cell in row[1:13]]
    kwargs = {VARIABLE_FIELDS[c]: v for c, v in zip(VARIABLE_COLUMNS, values)}
    return ComplexityProfile(doc_id=row[0], **kwargs)
