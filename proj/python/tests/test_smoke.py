import json

import pytest

import invctl


def record(product_id=1001, price=1999, name="Milk"):
    return invctl.ProductRecord(product_id, name, price, 9000, 9400, 9010)


def test_record_round_trip_through_tag():
    rec = record(name="Café ☕")
    tag = invctl.write_tag(invctl.Type2Tag(), rec)
    assert tag.data[0] == 0x03
    assert tag.data[1] == 16 + len("Café ☕".encode())
    assert invctl.read_tag(tag) == rec
    assert invctl.decode_record(invctl.encode_record(rec)) == rec


def test_codec_errors_carry_codes():
    with pytest.raises(invctl.InvctlError) as err:
        invctl.decode_record(b"\x02" + bytes(20))
    assert err.value.code == "BadVersion"
    with pytest.raises(invctl.InvctlError) as err:
        invctl.read_tag(invctl.Type2Tag())
    assert err.value.code == "BlankTag"
    with pytest.raises(ValueError):
        invctl.ean_check_digit("12a")


def test_checksums():
    assert invctl.code39_check_char("HELLO") == "B"
    assert invctl.code39_encode("HELLO", with_check=True) == "*HELLOB*"
    assert invctl.ean_check_digit("400638133393") == 1
    assert invctl.ean13_for_product(4) == "0000000000048"
    assert invctl.validate_label("EAN13", "4006381333931") == (True, "NONE")
    assert invctl.validate_label("EAN13", "4006381333932")[0] is False


def test_size_model():
    assert invctl.width_model(8) == pytest.approx(33.0)
    assert invctl.width_model(30) == pytest.approx(94.0)
    assert invctl.readability_class(66.0) == "DIFFICULT"
    assert invctl.BarcodeLabel("CODE39", "A" * 20).width_mm == pytest.approx(66.0)


def test_scan_model():
    label = invctl.BarcodeLabel("EAN8", "96385074")
    assert invctl.scan_barcode(label, tilt_deg=8).success
    assert invctl.scan_barcode(label, tilt_deg=352).success
    miss = invctl.scan_barcode(label, tilt_deg=9)
    assert (miss.success, miss.failure_reason) == (False, "ANGLE")
    assert invctl.scan_barcode(label, damage="SCRATCHED").failure_reason == "DAMAGE"

    tag = invctl.write_tag(invctl.Type2Tag(), record())
    hit = invctl.scan_nfc(tag, tilt_deg=180, distance_cm=10, damage="SCRATCHED")
    assert hit.success
    assert isinstance(hit.payload, bytes)
    assert invctl.scan_nfc(tag, distance_cm=10.5).failure_reason == "RANGE"
    assert invctl.nfc_latency_ms(125) == pytest.approx(12.358, abs=1e-3)


def test_experiments():
    table2 = invctl.run_table2().splitlines()
    assert table2[0] == "technology,angle_deg,readable,folded"
    assert "barcode,8,1,0" in table2 and "barcode,9,0,0" in table2
    assert invctl.run_table3().splitlines()[4] == "barcode,30,94.00,VERY_DIFFICULT"
    summary = invctl.run_latency_compare(10)
    assert summary["nfc_mean_ms"] < summary["barcode_mean_ms"]
    assert invctl.sweep_angles("barcode", 173) == [(0, True), (173, False)]


def test_store_sale_flow(tmp_path):
    store = invctl.Store(str(tmp_path))
    item = store.provision(record(), "NFC")
    assert item["status"] == "IN_STOCK"

    scan = store.scan(item["carrier_ref"], distance_cm=3)
    receipt = store.checkout(scan)
    assert receipt["total_minor"] == 1999

    with pytest.raises(invctl.InvctlError) as err:
        store.checkout(store.scan(item["carrier_ref"]))
    assert err.value.code == "AlreadySold"
    with pytest.raises(invctl.InvctlError) as err:
        store.reprice(item["sku"], 1499)
    assert err.value.code == "ItemSold"

    assert [e["kind"] for e in store.events()] == ["PROVISIONED", "SOLD"]
    snapshot = store.snapshot()
    del store

    reopened = invctl.Store(str(tmp_path))
    assert reopened.snapshot() == snapshot
    assert json.loads(snapshot)["items"][0]["status"] == "SOLD"
    lines = (tmp_path / "events.jsonl").read_text().splitlines()
    assert len(lines) == 2


def test_barcode_reprice_needs_new_label():
    store = invctl.Store()
    item = store.provision(record(4, 100, "Cable"), "BARCODE")
    assert item["carrier_ref"] == "0000000000048"
    with pytest.raises(invctl.InvctlError) as err:
        store.reprice(item["sku"], 90)
    assert err.value.code == "ImmutableCarrier"
    replaced = store.replace_label(item["sku"], 90)
    assert replaced["record"]["price_minor"] == 90
    assert store.items("IN_STOCK")[0]["sku"] == "4"
