#include "tvspec/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "tvspec/errors.hpp"

namespace tvspec {

JsonValue JsonValue::boolean(bool b) {
    JsonValue v;
    v.kind_ = Kind::Bool;
    v.flag_ = b;
    return v;
}

JsonValue JsonValue::integer(long long i) {
    JsonValue v;
    v.kind_ = Kind::Int;
    v.int_ = i;
    return v;
}

JsonValue JsonValue::real(double r) {
    JsonValue v;
    v.kind_ = Kind::Real;
    v.real_ = r;
    return v;
}

JsonValue JsonValue::str(std::string s) {
    JsonValue v;
    v.kind_ = Kind::Str;
    v.str_ = std::move(s);
    return v;
}

JsonValue JsonValue::array() {
    JsonValue v;
    v.kind_ = Kind::Arr;
    return v;
}

JsonValue JsonValue::object() {
    JsonValue v;
    v.kind_ = Kind::Obj;
    return v;
}

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
    fields_.emplace_back(key, std::move(v));
    return *this;
}

JsonValue& JsonValue::push(JsonValue v) {
    items_.push_back(std::move(v));
    return *this;
}

const JsonValue* JsonValue::find(const std::string& key) const {
    for (const auto& [k, v] : fields_)
        if (k == key) return &v;
    return nullptr;
}

std::string format_real17(double v) {
    if (std::isnan(v)) return "\"nan\"";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void escape_into(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void pad(std::string& out, int indent, int depth) {
    if (indent <= 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent) * depth, ' ');
}

} // namespace

void JsonValue::dump_into(std::string& out, int indent, int depth) const {
    switch (kind_) {
        case Kind::Null: out += "null"; break;
        case Kind::Bool: out += flag_ ? "true" : "false"; break;
        case Kind::Int: out += std::to_string(int_); break;
        case Kind::Real: out += format_real17(real_); break;
        case Kind::Str: escape_into(out, str_); break;
        case Kind::Arr: {
            if (items_.empty()) {
                out += "[]";
                break;
            }
            out += '[';
            for (std::size_t i = 0; i < items_.size(); ++i) {
                if (i) out += ',';
                pad(out, indent, depth + 1);
                items_[i].dump_into(out, indent, depth + 1);
            }
            pad(out, indent, depth);
            out += ']';
            break;
        }
        case Kind::Obj: {
            if (fields_.empty()) {
                out += "{}";
                break;
            }
            out += '{';
            for (std::size_t i = 0; i < fields_.size(); ++i) {
                if (i) out += ',';
                pad(out, indent, depth + 1);
                escape_into(out, fields_[i].first);
                out += indent > 0 ? ": " : ":";
                fields_[i].second.dump_into(out, indent, depth + 1);
            }
            pad(out, indent, depth);
            out += '}';
            break;
        }
    }
}

std::string JsonValue::dump(int indent) const {
    std::string out;
    dump_into(out, indent, 0);
    return out;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + p.parent_path().string());
    }
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    if (!out) throw IoError("failed writing " + path);
}

} // namespace tvspec
