#include "skewdyn/text_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace skewdyn {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void JsonWriter::comma() {
  if (!need_comma_.empty()) {
    if (need_comma_.back()) out_ += ',';
    need_comma_.back() = true;
  }
}

JsonWriter& JsonWriter::begin_object() {
  comma();
  out_ += '{';
  need_comma_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::begin_object(const std::string& key) {
  comma();
  out_ += '"' + key + "\":{";
  need_comma_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += '}';
  need_comma_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array(const std::string& key) {
  comma();
  out_ += '"' + key + "\":[";
  need_comma_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  need_comma_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key_string(const std::string& key, const std::string& value) {
  comma();
  out_ += '"' + key + "\":\"" + value + '"';
  return *this;
}

JsonWriter& JsonWriter::key_double(const std::string& key, double value) {
  comma();
  out_ += '"' + key + "\":" + fmt_double(value);
  return *this;
}

JsonWriter& JsonWriter::key_int(const std::string& key, long long value) {
  comma();
  out_ += '"' + key + "\":" + std::to_string(value);
  return *this;
}

JsonWriter& JsonWriter::key_bool(const std::string& key, bool value) {
  comma();
  out_ += '"' + key + "\":" + (value ? "true" : "false");
  return *this;
}

JsonWriter& JsonWriter::key_null(const std::string& key) {
  comma();
  out_ += '"' + key + "\":null";
  return *this;
}

JsonWriter& JsonWriter::array_double(double value) {
  comma();
  out_ += fmt_double(value);
  return *this;
}

std::string complex_json(const std::string& key, std::complex<double> v) {
  return '"' + key + "\":[" + fmt_double(v.real()) + ',' + fmt_double(v.imag()) + ']';
}

std::string encode_pgm16(int width, int height, const std::vector<uint16_t>& pixels) {
  if (width < 1 || height < 1 ||
      pixels.size() != static_cast<size_t>(width) * static_cast<size_t>(height))
    throw std::invalid_argument("encode_pgm16: bad dimensions");
  std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n65535\n";
  out.reserve(out.size() + pixels.size() * 2);
  for (uint16_t v : pixels) {
    out.push_back(static_cast<char>(v >> 8));
    out.push_back(static_cast<char>(v & 0xff));
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace skewdyn
