import json

import pytest

from skein_f.catalog import Catalog, CatalogEntry, CatalogError, bundled, ingest, load, parse_catalog

REQUIRED = [
    "unknot", "O2", "O3", "Hopf+", "Hopf-", "trefoil", "figure-eight", "A", "B",
    "L10n76{1,1}", "L10n79{1,1}", "L10n95{1,0}", "L11a404{1,1}", "L11a428{0,1}",
    "L11a467{0,1}", "L11a527{0,0}", "L11n325{1,1}", "L11n356{1,0}", "L11n358{0,1}",
    "L11n358{1,1}", "L11n418{0,0}", "L11n418{1,0}", "L11n424{0,0}", "L11n425{1,0}",
    "L11n434{0,0}",
]


@pytest.mark.parametrize("ident", REQUIRED)
def test_bundled_catalog_has(ident, catalog):
    assert ident in catalog
    e = catalog[ident]
    assert e.note
    assert e.diagram().n_components == e.components


def test_bundled_unlinks(catalog):
    assert catalog.diagram("O3").n_crossings == 0
    assert catalog.diagram("O3").n_components == 3


def test_empty_file_gives_empty_catalog(tmp_path):
    p = tmp_path / "empty.csv"
    p.write_text("")
    assert len(ingest(p)) == 0


def test_duplicate_id_named(tmp_path):
    p = tmp_path / "dup.csv"
    p.write_text("id,components,pd\nk,1,PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]\nk,1,PD[]\n")
    with pytest.raises(CatalogError, match="'k'"):
        ingest(p)


def test_component_mismatch_reports_line(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("id,components,pd,note\nok,2,PD[] ,\nbad,2,\"PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]\",x\n")
    with pytest.raises(CatalogError, match=r"bad\.csv:3: id 'bad' declares 2"):
        ingest(p)


def test_parse_error_reports_line(tmp_path):
    p = tmp_path / "raw.txt"
    p.write_text("PD[X[4,1,3,2], X[2,3,1,4]]\n\nPD[X[1,2,3]]\n")
    with pytest.raises(CatalogError, match=r"raw\.txt:3"):
        ingest(p)


def test_raw_list_gets_generated_ids(tmp_path):
    p = tmp_path / "raw.txt"
    p.write_text("# two links\nPD[X[4,1,3,2], X[2,3,1,4]]\nPD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]\n")
    cat = ingest(p)
    assert cat.ids == ["link1", "link2"]
    assert cat["link1"].components == 2


def test_json_catalog(tmp_path):
    p = tmp_path / "cat.json"
    p.write_text(json.dumps({"entries": [{"id": "h", "pd": [[4, 1, 3, 2], [2, 3, 1, 4]]}, "PD[] O^2"]}))
    cat = ingest(p)
    assert cat["h"].components == 2 and cat["link2"].components == 2
    with pytest.raises(CatalogError, match="entry 1"):
        parse_catalog('[{"id": "x"}]', "c.json")
    with pytest.raises(CatalogError, match="malformed JSON"):
        parse_catalog("[1,", "c.json", "json")


def test_missing_columns_and_bad_count():
    with pytest.raises(CatalogError, match="missing columns"):
        parse_catalog("name,pd\nx,PD[]\n", "c.csv", "csv")
    with pytest.raises(CatalogError, match="integer"):
        parse_catalog("id,components,pd\nx,two,PD[]\n", "c.csv", "csv")


def test_unknown_id_and_merge(tmp_path):
    base = bundled()
    with pytest.raises(KeyError, match="unknown link id"):
        base["nope"]
    p = tmp_path / "extra.csv"
    p.write_text('id,components,pd,note\ntrefoil,1,"PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]",left-handed\nextra,1,PD[],\n')
    merged = load(p)
    assert merged["trefoil"].note == "left-handed"
    assert "extra" in merged and len(merged) == len(base) + 1


def test_csv_roundtrip(catalog):
    again = parse_catalog(catalog.to_csv(), "again.csv", "csv")
    assert [e.to_json() for e in again] == [e.to_json() for e in catalog]


def test_catalog_add_duplicate():
    cat = Catalog([CatalogEntry("a", "PD[]", 1)])
    with pytest.raises(CatalogError, match="duplicate id 'a'"):
        cat.add(CatalogEntry("a", "PD[]", 2))


def test_unreadable_file(tmp_path):
    with pytest.raises(CatalogError, match="cannot read"):
        ingest(tmp_path / "missing.csv")
