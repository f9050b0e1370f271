"""Inventory and checkout core: tag and barcode codecs, scan model, event-sourced store."""

from ._core import (
    BarcodeLabel,
    InvctlError,
    ProductRecord,
    ScanOutcome,
    Store,
    Type2Tag,
    code39_check_char,
    code39_decode,
    code39_encode,
    decode_record,
    ean13_for_product,
    ean_check_digit,
    encode_record,
    nfc_latency_ms,
    read_tag,
    readability_class,
    run_latency_compare,
    run_table2,
    run_table3,
    scan_barcode,
    scan_nfc,
    sweep_angles,
    sweep_csv,
    validate_label,
    width_model,
    write_tag,
)

__all__ = [
    "BarcodeLabel",
    "InvctlError",
    "ProductRecord",
    "ScanOutcome",
    "Store",
    "Type2Tag",
    "code39_check_char",
    "code39_decode",
    "code39_encode",
    "decode_record",
    "ean13_for_product",
    "ean_check_digit",
    "encode_record",
    "nfc_latency_ms",
    "read_tag",
    "readability_class",
    "run_latency_compare",
    "run_table2",
    "run_table3",
    "scan_barcode",
    "scan_nfc",
    "sweep_angles",
    "sweep_csv",
    "validate_label",
    "width_model",
    "write_tag",
]
