#include "invctl/barcode_codec.hpp"
#include "invctl/experiments.hpp"
#include "invctl/json_codec.hpp"
#include "invctl/scan_sim.hpp"
#include "invctl/tag_codec.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace invctl;

namespace {

/// Carries a core Error across the binding boundary.
struct CoreError {
    Error error;
};

py::handle g_error_type;  // intentionally never released

template <typename T>
T unwrap(Result<T> r) {
    if (!r) throw CoreError{r.error()};
    return std::move(r).value();
}

void unwrap(Result<void> r) {
    if (!r) throw CoreError{r.error()};
}

[[noreturn]] void invalid(const std::string& message) {
    throw CoreError{Error{Errc::InvalidLabel, message}};
}

py::object to_py(const Json& j) {
    switch (j.type()) {
        case Json::value_t::null: return py::none();
        case Json::value_t::boolean: return py::bool_(j.get<bool>());
        case Json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
        case Json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
        case Json::value_t::number_float: return py::float_(j.get<double>());
        case Json::value_t::string: return py::str(j.get<std::string>());
        case Json::value_t::array: {
            py::list out;
            for (const auto& v : j) out.append(to_py(v));
            return std::move(out);
        }
        default: {
            py::dict out;
            for (const auto& [k, v] : j.items()) out[py::str(k)] = to_py(v);
            return std::move(out);
        }
    }
}

py::bytes to_bytes(std::span<const std::uint8_t> b) {
    return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
}

Bytes from_bytes(const py::bytes& b) {
    const std::string_view s = b;
    return Bytes(s.begin(), s.end());
}

Damage damage_arg(std::string_view text) {
    auto d = parse_damage(text);
    if (!d) invalid("unknown damage " + std::string(text));
    return *d;
}

Symbology symbology_arg(std::string_view text) {
    auto s = parse_symbology(text);
    if (!s) invalid("unknown symbology " + std::string(text));
    return *s;
}

ReaderKind reader_arg(std::string_view text) {
    if (text == to_string(ReaderKind::Nfc)) return ReaderKind::Nfc;
    if (text == to_string(ReaderKind::Barcode)) return ReaderKind::Barcode;
    invalid("unknown reader " + std::string(text));
}

Technology technology_arg(std::string_view text) {
    auto t = parse_technology(text);
    if (!t) invalid("unknown technology " + std::string(text));
    return *t;
}

ScanContext context(int tilt_deg, double distance_cm, std::string_view damage, ReaderKind reader) {
    return ScanContext{tilt_deg, distance_cm, damage_arg(damage), reader};
}

std::unique_ptr<Store> open_store(std::optional<std::string> data_dir, std::size_t snapshot_every) {
    if (!data_dir) return std::make_unique<Store>();
    return unwrap(Store::open(*data_dir, system_now, snapshot_every));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Inventory and checkout core: tag and barcode codecs, scan model, event-sourced store.";

    g_error_type = PyErr_NewException("invctl._core.InvctlError", PyExc_ValueError, nullptr);
    m.attr("InvctlError") = g_error_type;
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const CoreError& e) {
            const std::string code(to_string(e.error.code));
            py::object exc = g_error_type(code + ": " + e.error.message);
            exc.attr("code") = code;
            exc.attr("message") = e.error.message;
            PyErr_SetObject(g_error_type.ptr(), exc.ptr());
        }
    });

    py::class_<ProductRecord>(m, "ProductRecord")
        .def(py::init([](std::uint32_t product_id, std::string name, std::uint32_t price_minor,
                         std::uint16_t manufacturing_date, std::uint16_t expiry_date, std::uint16_t delivery_date) {
                 return ProductRecord{product_id, std::move(name), price_minor, manufacturing_date, expiry_date,
                                      delivery_date};
             }),
             py::arg("product_id"), py::arg("name"), py::arg("price_minor"), py::arg("manufacturing_date"),
             py::arg("expiry_date"), py::arg("delivery_date"))
        .def_readwrite("product_id", &ProductRecord::product_id)
        .def_readwrite("name", &ProductRecord::name)
        .def_readwrite("price_minor", &ProductRecord::price_minor)
        .def_readwrite("manufacturing_date", &ProductRecord::manufacturing_date)
        .def_readwrite("expiry_date", &ProductRecord::expiry_date)
        .def_readwrite("delivery_date", &ProductRecord::delivery_date)
        .def("to_dict", [](const ProductRecord& r) { return to_py(to_json(r)); })
        .def("__eq__", [](const ProductRecord& a, const ProductRecord& b) { return a == b; })
        .def("__repr__", [](const ProductRecord& r) { return "ProductRecord(" + to_json(r).dump() + ")"; });

    py::class_<Type2Tag>(m, "Type2Tag")
        .def(py::init([](std::optional<std::string> uid) {
                 Type2Tag t;
                 if (uid) t.uid = unwrap(uid_from_hex(*uid));
                 return t;
             }),
             py::arg("uid") = py::none())
        .def_property_readonly("uid", [](const Type2Tag& t) { return uid_to_hex(t.uid); })
        .def_property(
            "data", [](const Type2Tag& t) { return to_bytes(t.data); },
            [](Type2Tag& t, const py::bytes& b) {
                const Bytes v = from_bytes(b);
                if (v.size() != Type2Tag::capacity_bytes) throw CoreError{Error{Errc::WrongLength, "need 128 bytes"}};
                std::copy(v.begin(), v.end(), t.data.begin());
            })
        .def_readwrite("write_locked", &Type2Tag::write_locked)
        .def("blank", &Type2Tag::blank)
        .def("hex_dump", [](const Type2Tag& t) { return hex_dump(t.data); });

    m.def("encode_record", [](const ProductRecord& r) { return to_bytes(unwrap(encode_record(r))); });
    m.def("decode_record", [](const py::bytes& b) { return unwrap(decode_record(from_bytes(b))); });
    m.def("write_tag", [](const Type2Tag& t, const ProductRecord& r) { return unwrap(write_tag(t, r)); });
    m.def("read_tag", [](const Type2Tag& t) { return unwrap(read_tag(t)); });

    m.def("code39_check_char", [](std::string_view p) { return std::string(1, unwrap(code39_check_char(p))); });
    m.def("code39_encode", [](std::string_view p, bool check) { return unwrap(code39_encode(p, check)); },
          py::arg("payload"), py::arg("with_check") = false);
    m.def("code39_decode", [](std::string_view s, bool check) { return unwrap(code39_decode(s, check)); },
          py::arg("symbol"), py::arg("with_check") = false);
    m.def("ean_check_digit", [](std::string_view d) { return unwrap(ean_check_digit(d)); });
    m.def("ean13_for_product", &ean13_for_product);
    m.def("width_model", [](int n) { return unwrap(width_model(n)); });
    m.def("readability_class", [](double mm) { return std::string(to_string(readability_class(mm))); });
    m.def(
        "validate_label",
        [](std::string_view sym, std::string_view chars, bool code39_check) {
            const auto v = validate(symbology_arg(sym), chars, code39_check);
            return py::make_tuple(v.valid, std::string(to_string(v.issue)));
        },
        py::arg("symbology"), py::arg("chars"), py::arg("code39_check") = false);

    py::class_<BarcodeLabel>(m, "BarcodeLabel")
        .def(py::init([](std::string_view sym, std::string chars, std::string_view damage) {
                 auto label = unwrap(make_label(symbology_arg(sym), std::move(chars)));
                 return label.with_damage(damage_arg(damage));
             }),
             py::arg("symbology"), py::arg("chars"), py::arg("damage") = "NONE")
        .def_property_readonly("symbology", [](const BarcodeLabel& l) { return std::string(to_string(l.symbology())); })
        .def_property_readonly("chars", &BarcodeLabel::chars)
        .def_property_readonly("width_mm", &BarcodeLabel::width_mm)
        .def_property_readonly("damage", [](const BarcodeLabel& l) { return std::string(to_string(l.damage())); });

    py::class_<ScanOutcome>(m, "ScanOutcome")
        .def_readonly("success", &ScanOutcome::success)
        .def_readonly("latency_ms", &ScanOutcome::latency_ms)
        .def_property_readonly("failure_reason",
                               [](const ScanOutcome& o) -> std::optional<std::string> {
                                   if (!o.failure_reason) return std::nullopt;
                                   return std::string(to_string(*o.failure_reason));
                               })
        .def_property_readonly("payload",
                               [](const ScanOutcome& o) -> py::object {
                                   if (auto* b = std::get_if<Bytes>(&o.payload)) return to_bytes(*b);
                                   if (auto* s = std::get_if<std::string>(&o.payload)) return py::str(*s);
                                   return py::none();
                               })
        .def("to_dict", [](const ScanOutcome& o) { return to_py(to_json(o)); })
        .def("__repr__", [](const ScanOutcome& o) { return "ScanOutcome(" + to_json(o).dump() + ")"; });

    m.def(
        "scan_barcode",
        [](const BarcodeLabel& label, int tilt_deg, double distance_cm, std::string_view damage,
           std::string_view reader) {
            return scan_barcode(label, context(tilt_deg, distance_cm, damage, reader_arg(reader)));
        },
        py::arg("label"), py::arg("tilt_deg") = 0, py::arg("distance_cm") = 0.0, py::arg("damage") = "NONE",
        py::arg("reader") = "BARCODE_READER");
    m.def(
        "scan_nfc",
        [](const Type2Tag& tag, int tilt_deg, double distance_cm, std::string_view damage, std::string_view reader) {
            return scan_nfc(tag, context(tilt_deg, distance_cm, damage, reader_arg(reader)));
        },
        py::arg("tag"), py::arg("tilt_deg") = 0, py::arg("distance_cm") = 0.0, py::arg("damage") = "NONE",
        py::arg("reader") = "NFC_READER");
    m.def("nfc_latency_ms", &nfc_latency_ms);
    m.def(
        "sweep_angles",
        [](std::string_view tech, int step) {
            std::vector<std::pair<int, bool>> out;
            for (const auto& row : sweep_angles(technology_arg(tech), step)) out.emplace_back(row.angle_deg, row.readable);
            return out;
        },
        py::arg("technology"), py::arg("step_deg") = 1);
    m.def(
        "sweep_csv",
        [](std::string_view tech, int step) {
            const auto t = technology_arg(tech);
            return sweep_csv(t, sweep_angles(t, step));
        },
        py::arg("technology"), py::arg("step_deg") = 1);

    m.def("run_table2", &experiments::run_table2, py::arg("step_deg") = 1);
    m.def("run_table3", &experiments::run_table3);
    m.def(
        "run_latency_compare",
        [](std::size_t items, std::size_t payload) {
            const auto s = unwrap(experiments::run_latency_compare(items, payload));
            py::dict d;
            d["items"] = s.items;
            d["nfc_payload_bytes"] = s.nfc_payload_bytes;
            d["barcode_chars"] = s.barcode_chars;
            d["nfc_mean_ms"] = s.nfc_mean_ms;
            d["barcode_mean_ms"] = s.barcode_mean_ms;
            d["csv"] = experiments::latency_csv(s);
            return d;
        },
        py::arg("items"), py::arg("nfc_payload_bytes") = 125);

    py::class_<Store>(m, "Store")
        .def(py::init(&open_store), py::arg("data_dir") = py::none(), py::arg("snapshot_every") = 100)
        .def(
            "provision",
            [](Store& s, const ProductRecord& r, std::string_view kind) {
                auto k = parse_carrier_kind(kind);
                if (!k) invalid("carrier_kind must be NFC or BARCODE");
                return to_py(to_json(unwrap(s.provision(r, *k))));
            },
            py::arg("record"), py::arg("carrier_kind"))
        .def(
            "scan",
            [](const Store& s, const std::string& carrier_ref, int tilt_deg, double distance_cm,
               std::string_view damage, std::optional<std::string> reader) {
                auto carrier = unwrap(s.carrier(carrier_ref));
                if (auto* tag = std::get_if<Type2Tag>(&carrier)) {
                    const auto r = reader ? reader_arg(*reader) : ReaderKind::Nfc;
                    return scan_nfc(*tag, context(tilt_deg, distance_cm, damage, r));
                }
                const auto r = reader ? reader_arg(*reader) : ReaderKind::Barcode;
                return scan_barcode(std::get<BarcodeLabel>(carrier), context(tilt_deg, distance_cm, damage, r));
            },
            py::arg("carrier_ref"), py::arg("tilt_deg") = 0, py::arg("distance_cm") = 0.0, py::arg("damage") = "NONE",
            py::arg("reader") = py::none())
        .def("checkout", [](Store& s, const ScanOutcome& o) { return to_py(to_json(unwrap(s.checkout(o)))); })
        .def("reprice",
             [](Store& s, std::string_view sku, std::uint32_t price) { return to_py(to_json(unwrap(s.reprice(sku, price)))); })
        .def("replace_label",
             [](Store& s, std::string_view sku, std::uint32_t price) {
                 return to_py(to_json(unwrap(s.replace_label(sku, price))));
             })
        .def("set_tag_locked", [](Store& s, std::string_view sku, bool locked) { unwrap(s.set_tag_locked(sku, locked)); })
        .def(
            "items",
            [](const Store& s, std::optional<std::string> status) {
                std::optional<ItemStatus> filter;
                if (status) {
                    filter = parse_item_status(*status);
                    if (!filter) invalid("status must be IN_STOCK or SOLD");
                }
                py::list out;
                for (const auto& item : s.items(filter)) out.append(to_py(to_json(item)));
                return out;
            },
            py::arg("status") = py::none())
        .def("item",
             [](const Store& s, std::string_view sku) -> py::object {
                 auto item = s.item(sku);
                 return item ? to_py(to_json(*item)) : py::none();
             })
        .def("receipt",
             [](const Store& s, std::uint64_t id) -> py::object {
                 auto r = s.receipt(id);
                 return r ? to_py(to_json(*r)) : py::none();
             })
        .def("events",
             [](const Store& s) {
                 py::list out;
                 for (const auto& e : s.events()) out.append(to_py(to_json(e)));
                 return out;
             })
        .def("snapshot", &Store::snapshot)
        .def("write_snapshot", [](const Store& s) { unwrap(s.write_snapshot()); });
}
