import pytest
from hypothesis import given
from hypothesis import strategies as st

from arousalkit.corpus import Comment, Field, Issue, Priority
from arousalkit.scoring import (
    MODES,
    ScoringLexicon,
    combined_score,
    load_scores,
    resolve_sea_avg,
    save_scores,
    score_corpus,
    score_text,
)

GENERAL = ScoringLexicon({"fire": 8.0, "calm": 2.0, "note": 5.3, "word": 5.9})
# avg = (8.0 + 2.0 + 5.3 + 5.9) / 4 = 5.3


class TestScoreText:
    def test_no_match_is_absent(self):
        assert score_text(["nothing", "here"], GENERAL) is None

    def test_max_plus_min_without_clamping(self):
        result = score_text(["fire", "calm"], GENERAL)
        assert result.score == pytest.approx(10.0)
        assert result.max_used == pytest.approx(8.0)
        assert result.min_used == pytest.approx(2.0)

    def test_single_high_word_clamps_min_to_average(self):
        lex = ScoringLexicon({"high": 7.0, "a": 5.3, "b": 5.3, "c": 4.6, "d": 4.3})
        assert lex.avg == pytest.approx(5.3)
        result = score_text(["high"], lex)
        assert result.max_used == pytest.approx(7.0)
        assert result.min_used == pytest.approx(5.3)
        assert result.score == pytest.approx(12.3)

    def test_single_low_word_clamps_max_to_average(self):
        result = score_text(["calm"], GENERAL)
        assert result.max_used == pytest.approx(GENERAL.avg)
        assert result.min_used == pytest.approx(2.0)

    def test_duplicates_count_occurrences_but_not_extremes(self):
        once = score_text(["fire"], GENERAL)
        thrice = score_text(["fire", "fire", "fire"], GENERAL)
        assert thrice.n_matched == 3
        assert once.n_matched == 1
        assert thrice.score == once.score

    def test_all_average_words_give_twice_average(self):
        lex = ScoringLexicon({"a": 5.0, "b": 5.0})
        result = score_text(["a", "b"], lex)
        assert result.score == pytest.approx(2 * lex.avg)


class TestCombinedScore:
    SEA = ScoringLexicon({"fire": 8.5, "urgent": 7.5, "sleepy": 1.5, "pad": 4.0})
    # sea avg = 5.375, lexicon-mode sea_avg = 10.75

    def test_no_sea_match_keeps_general_score(self):
        result = combined_score(["note", "word"], GENERAL, self.SEA, sea_avg=10.7)
        base = score_text(["note", "word"], GENERAL)
        assert result.score == pytest.approx(base.score)

    def test_stated_formula_arithmetic(self):
        tokens = ["fire", "calm", "urgent"]
        base = score_text(tokens, GENERAL)
        sea_part = score_text(tokens, self.SEA)
        result = combined_score(tokens, GENERAL, self.SEA, sea_avg=10.7)
        assert result.score == pytest.approx(base.score + sea_part.score - 10.7)

    def test_no_general_match_is_absent_even_with_sea_match(self):
        assert combined_score(["urgent"], GENERAL, self.SEA, sea_avg=10.7) is None

    def test_reports_general_anchors(self):
        tokens = ["fire", "urgent", "sleepy"]
        base = score_text(tokens, GENERAL)
        result = combined_score(tokens, GENERAL, self.SEA, sea_avg=10.7)
        assert result.n_matched == base.n_matched
        assert result.max_used == base.max_used
        assert result.min_used == base.min_used


class TestResolveSeaAvg:
    def test_lexicon_mode_is_twice_mean(self):
        lex = ScoringLexicon({"a": 4.0, "b": 6.0})
        assert resolve_sea_avg(lex, "lexicon") == pytest.approx(10.0)

    def test_numeric_passthrough(self):
        lex = ScoringLexicon({"a": 4.0})
        assert resolve_sea_avg(lex, 7.25) == 7.25

    def test_dataset_mode_means_present_scores(self):
        lex = ScoringLexicon({"a": 4.0, "b": 6.0})
        issues = [
            Issue("1", Priority.MAJOR, "a", "", []),       # score 5 + 4 = 9
            Issue("2", Priority.MAJOR, "b b", "", []),     # score 6 + 5 = 11
            Issue("3", Priority.MAJOR, "zzz", "", []),     # absent
        ]
        assert resolve_sea_avg(lex, "dataset", issues) == pytest.approx(10.0)

    def test_unknown_setting_is_an_error(self):
        with pytest.raises(ValueError):
            resolve_sea_avg(ScoringLexicon({"a": 4.0}), "bogus")


def issue(id_, title="", description="", comments=(), priority=Priority.MAJOR):
    return Issue(id_, priority, title, description, [Comment(b) for b in comments])


class TestScoreCorpus:
    SEA = ScoringLexicon({"fire": 8.5, "sleepy": 1.5})

    def test_all_fields_matching_give_five_rows_per_mode(self):
        issues = [issue("1", "fire", "calm fire", ["fire a", "calm b"])]
        rows = score_corpus(issues, GENERAL, self.SEA, 10.7, modes=["general"])
        assert len(rows) == 5
        assert {r.field for r in rows} == set(Field)

    def test_unmatched_field_has_no_row(self):
        issues = [issue("1", "fire", "no match here")]
        rows = score_corpus(issues, GENERAL, self.SEA, 10.7, modes=["general"])
        assert [r.field for r in rows] == [Field.TITLE]

    def test_canonical_ordering(self):
        issues = [
            issue("b", "fire", "fire"),
            issue("a", "fire", "fire"),
        ]
        rows = score_corpus(issues, GENERAL, self.SEA, 10.7)
        keys = [(r.issue_id, r.field.value, r.mode) for r in rows]
        assert keys == sorted(
            keys, key=lambda k: (k[0], [f.value for f in Field].index(k[1]),
                                 MODES.index(k[2]))
        )

    def test_rerun_is_byte_identical(self, tmp_path):
        issues = [issue(f"i{n}", "fire note", "calm word", ["fire sleepy"])
                  for n in range(10)]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        save_scores(score_corpus(issues, GENERAL, self.SEA, 10.7), a)
        save_scores(score_corpus(issues, GENERAL, self.SEA, 10.7), b)
        assert a.read_bytes() == b.read_bytes()

    def test_save_load_round_trip_with_priorities(self, tmp_path):
        issues = [issue("x", "fire", priority=Priority.BLOCKER)]
        rows = score_corpus(issues, GENERAL, self.SEA, 10.7, modes=["general"])
        path = tmp_path / "scores.csv"
        save_scores(rows, path)
        loaded = load_scores(path, {"x": Priority.BLOCKER})
        assert len(loaded) == 1
        assert loaded[0].priority is Priority.BLOCKER
        assert loaded[0].score == pytest.approx(rows[0].score, abs=5e-5)
        header = path.read_text(encoding="utf-8").splitlines()[0]
        assert header == "issue_id,field,mode,n_matched,max,min,score"


arousal_values = st.floats(min_value=1.0, max_value=9.0, allow_nan=False)


@st.composite
def lexicon_and_tokens(draw):
    words = draw(
        st.dictionaries(
            st.text(alphabet="abcdefgh", min_size=1, max_size=3),
            arousal_values,
            min_size=1,
            max_size=12,
        )
    )
    tokens = draw(
        st.lists(
            st.one_of(
                st.sampled_from(sorted(words)),
                st.text(alphabet="xyz", min_size=1, max_size=3),
            ),
            max_size=25,
        )
    )
    return ScoringLexicon(words), tokens


class TestScoringProperties:
    @given(lexicon_and_tokens())
    def test_clamp_inequalities_and_sum(self, case):
        lex, tokens = case
        result = score_text(tokens, lex)
        if result is None:
            assert not any(t in lex for t in tokens)
        else:
            assert result.max_used >= lex.avg - 1e-12
            assert result.min_used <= lex.avg + 1e-12
            assert result.score == pytest.approx(result.max_used + result.min_used)

    @given(lexicon_and_tokens())
    def test_absent_iff_no_match(self, case):
        lex, tokens = case
        assert (score_text(tokens, lex) is None) == (not any(t in lex for t in tokens))

    @given(lexicon_and_tokens())
    def test_appending_extreme_tokens_is_monotone(self, case):
        lex, tokens = case
        before = score_text(tokens, lex)
        if before is None:
            return
        for word in sorted(lex._arousal):
            arousal = lex.arousal(word)
            after = score_text(tokens + [word], lex)
            if arousal > before.max_used:
                assert after.score >= before.score - 1e-9
            elif arousal < before.min_used:
                assert after.score <= before.score + 1e-9
