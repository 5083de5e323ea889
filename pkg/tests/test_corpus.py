import json

import pytest

from pdskit.corpus import (
    CorpusSplit,
    SplitSpec,
    TnSentence,
    TnToken,
    assemble_pair,
    emit_parallel,
    parse_kestrel_stream,
    split_corpus,
    write_split,
)
from pdskit.errors import InsufficientDataError, MalformedLineError
from pdskit.scanner import ScanConfig, invert_pretokenization

SAMPLE = """PLAIN\tthe\t<self>
CARDINAL\t123\tone hundred twenty three
PUNCT\t.\tsil
<eos>\t<eos>
PLAIN\thello\t<self>
<eos>\t<eos>
"""


def test_parse_sample_stream():
    sentences = list(parse_kestrel_stream(SAMPLE.splitlines()))
    assert len(sentences) == 2
    first = sentences[0]
    assert first.tokens[0] == TnToken("PLAIN", "the", "<self>")
    assert first.tokens[1] == TnToken("CARDINAL", "123", "one hundred twenty three")
    assert first.tokens[2] == TnToken("PUNCT", ".", "sil")
    assert sentences[1].tokens == (TnToken("PLAIN", "hello", "<self>"),)


def test_parse_handles_trailing_sentence_without_eos():
    lines = ["PLAIN\tloose\t<self>"]
    (sentence,) = parse_kestrel_stream(lines)
    assert sentence.tokens[0].input == "loose"


def test_parse_malformed_line_number():
    lines = ["PLAIN\tok\t<self>", "broken line"]
    with pytest.raises(MalformedLineError) as err:
        list(parse_kestrel_stream(lines))
    assert err.value.line_no == 2


def test_parse_lenient_skips(caplog):
    lines = ["PLAIN\tok\t<self>", "broken", "<eos>\t<eos>"]
    sentences = list(parse_kestrel_stream(lines, lenient=True))
    assert len(sentences) == 1
    assert len(sentences[0].tokens) == 1


def test_assemble_pair_resolution():
    sentence = TnSentence(
        (
            TnToken("PLAIN", "I", "<self>"),
            TnToken("CARDINAL", "123", "one hundred twenty three"),
            TnToken("PUNCT", ".", "sil"),
        )
    )
    assert assemble_pair(sentence) == ("I 123 .", "I one hundred twenty three .")
    assert sentence.source_text == "I 123 ."


def test_assemble_identity_sentence():
    sentence = TnSentence((TnToken("PLAIN", "hello", "<self>"),))
    assert assemble_pair(sentence) == ("hello", "hello")


def test_assemble_empty_sentence_rejected():
    with pytest.raises(ValueError):
        assemble_pair(TnSentence(()))


def _word(i: int) -> str:
    return "".join("abcdefghij"[int(c)] for c in str(i))


def _corpus(n: int) -> list[TnSentence]:
    sentences = []
    for i in range(n):
        cls = ("PLAIN", "CARDINAL", "DATE")[i % 3]
        sentences.append(
            TnSentence(
                (
                    TnToken("PLAIN", _word(i), "<self>"),
                    TnToken(cls, str(i), f"spoken {i}" if cls != "PLAIN" else "<self>"),
                )
            )
        )
    return sentences


def test_split_cardinalities_and_disjointness():
    sentences = _corpus(100)
    spec = SplitSpec(seed=1, heldout_size=10, per_class_size=0, train_sizes=(50,))
    split = split_corpus(sentences, spec)
    assert len(split.heldout) == 10
    assert len(split.train_sets[50]) == 50
    heldout_ids = {id(s) for s in split.heldout}
    train_ids = {id(s) for s in split.train_sets[50]}
    assert not heldout_ids & train_ids


def test_split_deterministic():
    sentences = _corpus(100)
    spec = SplitSpec(seed=9, heldout_size=10, per_class_size=5, train_sizes=(20, 40))
    a = split_corpus(sentences, spec)
    b = split_corpus(sentences, spec)
    assert a.heldout == b.heldout
    assert a.train_sets == b.train_sets
    assert a.per_class == b.per_class
    c = split_corpus(sentences, SplitSpec(seed=10, heldout_size=10, per_class_size=5, train_sizes=(20, 40)))
    assert c.heldout != a.heldout


def test_split_train_sets_nested():
    sentences = _corpus(200)
    spec = SplitSpec(seed=3, heldout_size=20, per_class_size=0, train_sizes=(30, 90, 150))
    split = split_corpus(sentences, spec)
    small, mid, big = (split.train_sets[k] for k in (30, 90, 150))
    assert small == mid[:30] and mid == big[:90]


def test_split_insufficient_train():
    with pytest.raises(InsufficientDataError):
        split_corpus(_corpus(100), SplitSpec(seed=1, heldout_size=10, per_class_size=0, train_sizes=(200,)))


def test_split_insufficient_class():
    sentences = _corpus(30)
    spec = SplitSpec(seed=1, heldout_size=2, per_class_size=25, train_sizes=(4,))
    with pytest.raises(InsufficientDataError) as err:
        split_corpus(sentences, spec)
    assert "short by" in str(err.value)


def test_split_per_class_membership():
    sentences = _corpus(120)
    spec = SplitSpec(seed=7, heldout_size=10, per_class_size=8, train_sizes=(30,))
    split = split_corpus(sentences, spec)
    train_ids = {id(s) for s in split.train_sets[30]}
    for cls, bucket in split.per_class.items():
        assert len(bucket) == 8
        for sentence in bucket:
            assert cls in sentence.classes()
            assert id(sentence) not in train_ids


def test_emit_parallel_alignment(tmp_path):
    sentences = _corpus(20)
    src, tgt = emit_parallel(
        sentences, tmp_path / "set.src", tmp_path / "set.tgt", pds_enabled=False
    )
    src_lines = src.read_text().splitlines()
    tgt_lines = tgt.read_text().splitlines()
    assert len(src_lines) == len(tgt_lines) == 20
    assert src_lines[0] == sentences[0].source_text
    assert tgt_lines[0] == sentences[0].target_text


def test_emit_parallel_pds_source_only(tmp_path):
    sentence = TnSentence(
        (
            TnToken("PLAIN", "I", "<self>"),
            TnToken("CARDINAL", "123", "one hundred twenty three"),
            TnToken("PUNCT", ".", "sil"),
        )
    )
    src, tgt = emit_parallel(
        [sentence], tmp_path / "p.src", tmp_path / "p.tgt", pds_enabled=True
    )
    assert src.read_text() == "I _ 1 03 2 02 3 01 _ .\n"
    assert tgt.read_text() == "I one hundred twenty three .\n"


def test_emit_parallel_empty(tmp_path):
    src, tgt = emit_parallel([], tmp_path / "e.src", tmp_path / "e.tgt", pds_enabled=False)
    assert src.read_text() == "" and tgt.read_text() == ""


def test_emitted_pds_sources_invert_back(tmp_path):
    # token-joined sources have space-delimited numbers, so inversion is exact
    sentences = _corpus(50)
    config = ScanConfig()
    src, _ = emit_parallel(
        sentences, tmp_path / "r.src", tmp_path / "r.tgt", pds_enabled=True, config=config
    )
    for line, sentence in zip(src.read_text().splitlines(), sentences):
        assert invert_pretokenization(line, config) == sentence.source_text


def test_emitted_pds_source_with_glued_token_inverts_to_padded_form(tmp_path):
    # an input token mixing digits and other characters (here a decimal)
    # picks up padding spaces on the way out; inversion keeps them
    sentence = TnSentence(
        (
            TnToken("PLAIN", "took", "<self>"),
            TnToken("DECIMAL", "49.297", "forty nine point two nine seven"),
        )
    )
    src, _ = emit_parallel(
        [sentence], tmp_path / "d.src", tmp_path / "d.tgt", pds_enabled=True
    )
    line = src.read_text().splitlines()[0]
    assert invert_pretokenization(line, ScanConfig()) == "took 49 . 297"


def test_write_split_files_and_manifest(tmp_path):
    sentences = _corpus(60)
    spec = SplitSpec(seed=2, heldout_size=6, per_class_size=4, train_sizes=(10, 20))
    split = split_corpus(sentences, spec)
    manifest = write_split(split, tmp_path, pds_enabled=False)
    names = {entry["name"] for entry in manifest["sets"]}
    assert names == {"heldout", "train_10", "train_20", "class_PLAIN", "class_CARDINAL", "class_DATE"}
    on_disk = json.loads((tmp_path / "manifest.json").read_text())
    assert on_disk == manifest
    assert manifest["seed"] == 2
    for entry in manifest["sets"]:
        src_lines = (tmp_path / entry["src"]).read_text().splitlines()
        tgt_lines = (tmp_path / entry["tgt"]).read_text().splitlines()
        assert len(src_lines) == len(tgt_lines) == entry["size"]


def test_write_split_byte_identical_across_runs(tmp_path):
    sentences = _corpus(60)
    spec = SplitSpec(seed=4, heldout_size=6, per_class_size=0, train_sizes=(12,))
    for d in ("a", "b"):
        write_split(split_corpus(sentences, spec), tmp_path / d, pds_enabled=True)
    for name in ("heldout.src", "heldout.tgt", "train_12.src", "manifest.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
