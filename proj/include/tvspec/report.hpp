#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace tvspec {

/// Minimal ordered JSON value for report emission. Key order is insertion
/// order and floats are always rendered with 17 significant digits, so a
/// rerun with the same seed dumps byte-identical output.
class JsonValue {
public:
    enum class Kind { Null, Bool, Int, Real, Str, Arr, Obj };

    JsonValue() : kind_(Kind::Null) {}

    static JsonValue boolean(bool b);
    static JsonValue integer(long long v);
    static JsonValue real(double v);
    static JsonValue str(std::string s);
    static JsonValue array();
    static JsonValue object();

    Kind kind() const { return kind_; }

    JsonValue& set(const std::string& key, JsonValue v); // object append, returns *this
    JsonValue& push(JsonValue v);                        // array append, returns *this

    const JsonValue* find(const std::string& key) const;
    const std::vector<JsonValue>& items() const { return items_; }

    bool as_bool() const { return flag_; }
    double as_real() const { return real_; }
    long long as_int() const { return int_; }
    const std::string& as_str() const { return str_; }

    std::string dump(int indent = 0) const;

private:
    void dump_into(std::string& out, int indent, int depth) const;

    Kind kind_;
    bool flag_ = false;
    long long int_ = 0;
    double real_ = 0;
    std::string str_;
    std::vector<std::pair<std::string, JsonValue>> fields_; // Obj
    std::vector<JsonValue> items_;                          // Arr
};

/// %.17g with stable rendering of the special values.
std::string format_real17(double v);

std::string csv_escape(const std::string& s);

/// Writes content to path, creating parent directories; throws IoError.
void write_text_file(const std::string& path, const std::string& content);

} // namespace tvspec
