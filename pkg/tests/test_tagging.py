"""Segmentation, tokenization, tagging, clause counting, column format."""

import pytest

from lexcite.errors import FormatError, TaggerLengthMismatch
from lexcite.ingest import RawDocument
from lexcite.tagging import (
    LexClass,
    LexiconTagger,
    Token,
    coarsen_tag,
    export_tagged,
    import_tagged,
    load_lexicon,
    segment_sentences,
    tag_document,
    tag_tokens,
    tokenize,
)


class TestSegmentation:
    def test_two_terminators(self):
        assert segment_sentences("A b. C d.") == ["A b.", "C d."]

    def test_decimal_period_never_splits(self):
        assert segment_sentences("Value was 3.5 mm. It grew.") == \
            ["Value was 3.5 mm.", "It grew."]

    def test_expanded_citation_two_sentences(self):
        text = "Smith and others (2010) found X. It held."
        assert len(segment_sentences(text)) == 2

    def test_no_split_before_lowercase(self):
        assert segment_sentences("See fig. 3 for details.") == \
            ["See fig. 3 for details."]

    def test_question_and_exclamation(self):
        assert segment_sentences("Really? Yes! Fine.") == ["Really?", "Yes!", "Fine."]

    def test_empty_text(self):
        assert segment_sentences("") == []
        assert segment_sentences("   ") == []


class TestTokenize:
    def test_simple(self):
        tokens = tokenize("Cats sleep.")
        assert [t.surface for t in tokens] == ["Cats", "sleep", "."]
        assert [t.is_word for t in tokens] == [True, True, False]

    def test_hyphenated_word_is_one_token(self):
        tokens = tokenize("state-of-the-art")
        assert [t.surface for t in tokens] == ["state-of-the-art"]
        assert tokens[0].is_word

    def test_symbol_detachment(self):
        tokens = tokenize("(p<0.05)")
        assert [t.surface for t in tokens] == ["(", "p", "<", "0.05", ")"]
        assert [t.is_word for t in tokens] == [False, True, False, False, False]

    def test_char_length_counts_letters_only(self):
        token = Token.from_surface("B12-x")
        assert token.char_length == 2
        assert tokenize("3.5")[0].char_length == 0

    def test_apostrophe_stays_inside(self):
        assert [t.surface for t in tokenize("the cell's wall")] == \
            ["the", "cell's", "wall"]


class TestCoarsen:
    @pytest.mark.parametrize("tag,expected", [
        ("NN", LexClass.NOUN), ("NNS", LexClass.NOUN), ("NNP", LexClass.NOUN),
        ("NNPS", LexClass.NOUN), ("VB", LexClass.VERB), ("VBD", LexClass.VERB),
        ("VBG", LexClass.VERB), ("VBN", LexClass.VERB), ("VBP", LexClass.VERB),
        ("VBZ", LexClass.VERB), ("JJ", LexClass.ADJECTIVE),
        ("JJR", LexClass.ADJECTIVE), ("JJS", LexClass.ADJECTIVE),
        ("RB", LexClass.ADVERB), ("RBR", LexClass.ADVERB), ("RBS", LexClass.ADVERB),
        ("DT", LexClass.OTHER), ("XYZ", LexClass.OTHER), ("", LexClass.OTHER),
    ])
    def test_mapping(self, tag, expected):
        assert coarsen_tag(tag) is expected


class TestTagTokens:
    def test_builtin_tagger_example(self):
        tagged = tag_tokens(tokenize("Cats sleep ."), LexiconTagger())
        assert [tt.fine_tag for tt in tagged] == ["NNS", "VBP", "."]
        assert [tt.lex_class for tt in tagged] == \
            [LexClass.NOUN, LexClass.VERB, LexClass.OTHER]

    def test_empty_input(self):
        assert tag_tokens([], LexiconTagger()) == []

    def test_length_mismatch(self):
        def bad_tagger(tokens):
            return ["NN"] * (len(tokens) - 1)

        with pytest.raises(TaggerLengthMismatch):
            tag_tokens(tokenize("a b c"), bad_tagger)

    def test_non_word_forced_other(self):
        def noun_everything(tokens):
            return ["NN"] * len(tokens)

        tagged = tag_tokens(tokenize("word ."), noun_everything)
        assert tagged[0].lex_class is LexClass.NOUN
        assert tagged[1].lex_class is LexClass.OTHER


class TestLexiconTagger:
    def test_lowercase_lookup_for_capitalized(self):
        tagger = LexiconTagger()
        assert tagger(tokenize("Big cats sleep ."))[:1] == ["JJ"]

    def test_suffix_fallbacks(self):
        tagger = LexiconTagger({"cat": "NN"})
        assert tagger(tokenize("quixotically"))[0] == "RB"
        assert tagger(tokenize("zorbing"))[0] == "VBG"
        assert tagger(tokenize("zorbed"))[0] == "VBD"
        assert tagger(tokenize("cats"))[0] == "NNS"
        assert tagger(tokenize("blorf"))[0] == "NN"

    def test_plural_of_unknown_stem_not_nns(self):
        tagger = LexiconTagger({"run": "VB"})
        assert tagger(tokenize("runs"))[0] == "NN"

    def test_ies_plural(self):
        tagger = LexiconTagger({"study": "NN"})
        assert tagger(tokenize("studies"))[0] == "NNS"

    def test_capitalized_mid_sentence_nnp(self):
        tagger = LexiconTagger({"the": "DT"})
        tags = tagger(tokenize("the Zorblax arrived"))
        assert tags[1] == "NNP"

    def test_sentence_initial_capital_not_nnp(self):
        tagger = LexiconTagger({})
        assert tagger(tokenize("Zorblax arrived"))[0] == "NN"

    def test_symbol_tags(self):
        tagger = LexiconTagger({})
        surfaces = [".", ",", ";", "(", ")", "3.5", "%", '"']
        tags = tagger([Token.from_surface(s) for s in surfaces])
        assert tags == [".", ",", ":", "(", ")", "CD", "SYM", "''"]

    def test_tie_breaks_to_smaller_tag(self):
        lexicon = load_lexicon()
        # bundled file gives "light" equal counts for JJ and NN
        assert lexicon["light"] == "JJ"

    def test_custom_lexicon_file(self, tmp_path):
        path = tmp_path / "lex.tsv"
        path.write_text("# header\nfoo\tVB\t10\nfoo\tNN\t20\n", encoding="utf-8")
        assert load_lexicon(path) == {"foo": "NN"}


class TestCountClauses:
    def tag(self, pairs):
        return import_tagged("\n".join(f"{w}\t{t}" for w, t in pairs) + "\n")

    def test_two_finite_verbs(self):
        doc = tag_document(RawDocument(
            doc_id="d", year=2010, domain="x",
            paragraphs=["The cat sat because it was tired."]))
        assert doc.sentences[0].clause_count == 2

    def test_modal_plus_base(self):
        doc = tag_document(RawDocument(
            doc_id="d", year=2010, domain="x", paragraphs=["It can run."]))
        assert doc.sentences[0].clause_count == 1

    def test_no_verbs(self):
        doc = self.tag([("red", "JJ"), ("door", "NN"), (".", ".")])
        assert doc.sentences[0].clause_count == 0

    def test_gerund_and_participle_never_count(self):
        doc = self.tag([("running", "VBG"), ("water", "NN"),
                        ("taken", "VBN"), (".", ".")])
        assert doc.sentences[0].clause_count == 0

    def test_modal_blocked_by_finite_tag(self):
        # MD ... VBZ ... VB: the finite tag ends the modal's search
        doc = self.tag([("can", "MD"), ("is", "VBZ"), ("go", "VB")])
        assert doc.sentences[0].clause_count == 1

    def test_two_modals_two_clauses(self):
        doc = self.tag([("can", "MD"), ("go", "VB"), ("and", "CC"),
                        ("may", "MD"), ("stay", "VB")])
        assert doc.sentences[0].clause_count == 2

    def test_invariant_under_nonverb_tags(self):
        base = [("a", "DT"), ("cat", "NN"), ("sat", "VBD")]
        changed = [("a", "XX"), ("cat", "YY"), ("sat", "VBD")]
        assert (self.tag(base).sentences[0].clause_count ==
                self.tag(changed).sentences[0].clause_count == 1)


class TestColumnFormat:
    def test_basic_import(self):
        doc = import_tagged("Cats\tNNS\nsleep\tVBP\n.\t.\n\n")
        assert len(doc.sentences) == 1
        assert doc.sentences[0].word_count == 2

    def test_clause_override(self):
        doc = import_tagged("#clauses=3\nCats\tNNS\nsleep\tVBP\n\n")
        assert doc.sentences[0].clause_count == 3

    def test_doc_directive(self):
        doc = import_tagged("#doc=ABC\nhi\tUH\n")
        assert doc.doc_id == "ABC"

    def test_doc_id_parameter_fallback(self):
        assert import_tagged("hi\tUH\n", doc_id="fallback").doc_id == "fallback"

    def test_missing_tab(self):
        with pytest.raises(FormatError) as err:
            import_tagged("Cats NNS\n")
        assert err.value.line_number == 1

    def test_too_many_fields(self):
        with pytest.raises(FormatError):
            import_tagged("Cats\tNNS\textra\n")

    def test_unknown_directive(self):
        with pytest.raises(FormatError) as err:
            import_tagged("ok\tNN\n#weird=1\n")
        assert err.value.line_number == 2

    def test_bad_clause_value(self):
        with pytest.raises(FormatError):
            import_tagged("#clauses=x\nok\tNN\n")

    def test_multiple_sentences(self):
        doc = import_tagged("a\tDT\n\nb\tNN\n\n")
        assert len(doc.sentences) == 2

    def test_round_trip_exact(self):
        doc = tag_document(RawDocument(
            doc_id="rt", year=2010, domain="x",
            paragraphs=["The cat sat. It can run fast!",
                        "Values were 3.5 mm (p<0.05)."]))
        again = import_tagged(export_tagged(doc))
        assert again == doc

    def test_round_trip_preserves_override(self):
        doc = import_tagged("#doc=z\n#clauses=9\nhi\tUH\n\n")
        again = import_tagged(export_tagged(doc))
        assert again.sentences[0].clause_count == 9
        assert again == doc


class TestTagDocument:
    def test_sentences_do_not_span_paragraphs(self):
        doc = tag_document(RawDocument(
            doc_id="d", year=2010, domain="x",
            paragraphs=["First sentence only", "second paragraph text"]))
        assert len(doc.sentences) == 2

    def test_word_count_totals(self):
        raw = RawDocument(doc_id="d", year=2010, domain="x",
                          paragraphs=["One two three. Four five."])
        doc = tag_document(raw)
        assert sum(s.word_count for s in doc.sentences) == 5
