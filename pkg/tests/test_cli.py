import json

import pytest

from similo.capture import CaptureElement, PageCapture, save_capture
from similo.cli import main
from similo.config import Config, load_config, parse_config, parse_weight_overrides
from similo.corpus import write_corpus
from similo.dom import Geometry

from conftest import DATASET, FIXTURES

YT_OLD = str(DATASET / "youtube" / "old.html")
YT_NEW = str(DATASET / "youtube" / "new.html")
ALI_OLD = str(DATASET / "aliexpress" / "old.html")
ALI_NEW = str(DATASET / "aliexpress" / "new.html")
CONTACT_OLD = str(DATASET / "contact" / "old.html")
FOUR_PARAMS = str(FIXTURES / "four_params.cfg")


# -- config ----------------------------------------------------------------------


def test_parse_config_defaults_and_overrides():
    config = parse_config("threshold = 2.5\nweight.tag = 2.0\nvote.weight.montoto = 0.9\n")
    assert config.threshold == 2.5
    assert config.weights["tag"] == 2.0
    assert config.weights["id"] == 1.5  # untouched default
    assert config.kind_weights["montoto"] == 0.9


def test_parse_config_rejects_unknown_keys():
    with pytest.raises(ValueError, match="unknown config key"):
        parse_config("weigth.tag = 1.0")
    with pytest.raises(ValueError, match="unknown config key"):
        parse_config("weight.color = 1.0")


def test_parse_config_comments_and_generator_settings(tmp_path):
    text = (
        "# comment\n"
        "generator.max_depth = 4\n"
        "generator.attribute_priority = name,class\n"
        "generator.exclude_href_with_query = false\n"
        "normalization = ned2\n"
    )
    path = tmp_path / "similo.cfg"
    path.write_text(text)
    config = load_config(path)
    assert config.generator.max_depth == 4
    assert config.generator.attribute_priority == ("name", "class")
    assert config.generator.exclude_href_with_query is False
    assert config.normalization == "ned2"


def test_weight_override_flag_parsing():
    assert parse_weight_overrides("tag=2,id=0.5") == {"tag": 2.0, "id": 0.5}
    with pytest.raises(ValueError):
        parse_weight_overrides("nope=1")


# -- extract ---------------------------------------------------------------------


def test_extract_single_element(capsys):
    xpath = "/html[1]/body[1]/main[1]/section[1]/form[1]/input[3]"
    assert main(["extract", CONTACT_OLD, "--xpath", xpath, "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload) == 1
    snap = payload[0]
    assert len(snap) == 14
    assert snap["tag"] == "input"
    assert snap["id"] == "subject"
    assert snap["visible_text"] == "What is it about?"


def test_extract_no_match_is_an_error(capsys):
    assert main(["extract", CONTACT_OLD, "--xpath", "/html[1]/body[1]/p[9]"]) == 2
    assert "no match" in capsys.readouterr().err


def test_extract_many_matches_reports_count(capsys):
    assert main(["extract", CONTACT_OLD, "--xpath", "//input"]) == 2
    assert "3 matches" in capsys.readouterr().err


def test_extract_all_candidates_table(capsys):
    assert main(["extract", CONTACT_OLD]) == 0
    out = capsys.readouterr().out
    assert "/html[1]/body[1]/nav[1]/ul[1]/li[3]/a[1]" in out
    assert "visible_text" in out


def test_extract_merges_capture_geometry(tmp_path, capsys):
    capture = PageCapture(
        url="fixture",
        captured_at="2026-08-10T00:00:00Z",
        elements=[
            CaptureElement(
                absolute_xpath="/html[1]/body[1]/main[1]/section[1]/form[1]/input[3]",
                tag="input",
                attributes={"id": "subject"},
                visible=True,
                visible_text="What is it about?",
                geometry=Geometry(40, 300, 200, 40),
            )
        ],
    )
    capture_path = tmp_path / "old.capture.json"
    save_capture(capture, capture_path)
    assert main([
        "extract", CONTACT_OLD,
        "--xpath", "/html[1]/body[1]/main[1]/section[1]/form[1]/input[3]",
        "--capture", str(capture_path), "--format", "json",
    ]) == 0
    snap = json.loads(capsys.readouterr().out)[0]
    assert snap["location"] == [40, 300]
    assert snap["area"] == 8000
    assert snap["shape"] == 5.0


# -- locate ----------------------------------------------------------------------


def test_locate_identity_rank_one(capsys):
    xpath = "/html[1]/body[1]/nav[1]/ul[1]/li[3]/a[1]"
    assert main(["locate", CONTACT_OLD, xpath, CONTACT_OLD, "--format", "json"]) == 0
    ranking = json.loads(capsys.readouterr().out)
    assert ranking[0]["rank"] == 1
    assert ranking[0]["xpath"] == xpath


def test_locate_category_fixture_scores(capsys):
    old_xpath = "/html[1]/body[1]/div[4]/div[1]/div[1]/div[2]/div[1]/div[2]/dl[7]/dt[1]/span[1]/a[1]"
    assert main([
        "locate", ALI_OLD, old_xpath, ALI_NEW,
        "--config", FOUR_PARAMS, "--format", "json", "--top-k", "3",
    ]) == 0
    ranking = json.loads(capsys.readouterr().out)
    assert ranking[0]["xpath"].endswith("/dl[13]/dt[1]/span[1]/a[1]")
    assert ranking[0]["score"] == pytest.approx(3.21, abs=0.1)


def test_locate_prints_breakdown_table(capsys):
    xpath = "/html[1]/body[1]/header[1]/h1[1]"
    news_old = str(DATASET / "news" / "old.html")
    assert main(["locate", news_old, xpath, news_old, "--top-k", "2"]) == 0
    out = capsys.readouterr().out
    assert "#1" in out
    assert "visible_text" in out and "sim=" in out


def test_locate_threshold_signals_no_match(capsys):
    xpath = "/html[1]/body[1]/nav[1]/ul[1]/li[3]/a[1]"
    code = main(["locate", CONTACT_OLD, xpath, CONTACT_OLD, "--threshold", "1000"])
    assert code == 1
    assert "no acceptable match" in capsys.readouterr().out


def test_locate_unresolvable_old_xpath(capsys):
    code = main(["locate", CONTACT_OLD, "/html[1]/body[1]/p[9]", CONTACT_OLD])
    assert code == 2
    assert "no match" in capsys.readouterr().err


# -- bench -----------------------------------------------------------------------


def test_bench_writes_report_and_table(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code = main(["bench", str(DATASET), "--repeats", "1", "--out", str(out_path)])
    assert code == 0
    table = capsys.readouterr().out
    assert "Absolute XPath" in table and "Similo" in table
    report = json.loads(out_path.read_text())
    assert report["totals"]["similo"]["non_located"] == 1
    assert set(report["per_site"]) == {"aliexpress", "contact", "news", "youtube"}


def test_bench_restricted_to_one_approach(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code = main([
        "bench", str(DATASET), "--approach", "similo", "--repeats", "1",
        "--format", "json", "--out", str(out_path),
    ])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert set(report["totals"]) == {"similo"}


def test_bench_variant_flag_keeps_one_voting_row(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code = main([
        "bench", str(DATASET), "--variant", "best", "--repeats", "1",
        "--format", "json", "--out", str(out_path),
    ])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert "lml_best" in report["totals"]
    assert "lml_worst" not in report["totals"]
    assert "similo" in report["totals"]


def test_bench_generated_corpus_round_trip(tmp_path, capsys):
    dataset = tmp_path / "corpus"
    write_corpus(dataset, n_pairs=4, seed=3, targets_per_page=2)
    out_path = tmp_path / "report.json"
    assert main(["bench", str(dataset), "--repeats", "1", "--out", str(out_path)]) == 0
    report = json.loads(out_path.read_text())
    total = report["totals"]["similo"]["located"] + report["totals"]["similo"]["non_located"]
    assert total == 8


def test_bench_invalid_dataset_nonzero_exit(tmp_path, capsys):
    broken = tmp_path / "broken"
    (broken / "site").mkdir(parents=True)
    (broken / "site" / "old.html").write_text("<body><a>x</a></body>")
    out_path = tmp_path / "report.json"
    code = main(["bench", str(broken), "--repeats", "1", "--out", str(out_path)])
    assert code == 1
    assert "new.html" in capsys.readouterr().out


def test_bench_unknown_approach_rejected(capsys):
    assert main(["bench", str(DATASET), "--approach", "psychic"]) == 2
    assert "unknown approach" in capsys.readouterr().err


def test_config_file_merges_with_flag_overrides(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("threshold = 5\nformat = json\n")
    base = Config()
    merged = load_config(cfg, base)
    assert merged.threshold == 5.0
    assert merged.output_format == "json"
