#ifndef SKEWDYN_TEXT_IO_HPP
#define SKEWDYN_TEXT_IO_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace skewdyn {

// %.17g rendering, so every double round-trips
std::string fmt_double(double v);

// Minimal JSON writer; all numeric output goes through fmt_double.  Output
// documents are flat enough that a stream writer keeps byte-level control.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array(const std::string& key);
  JsonWriter& begin_object(const std::string& key);
  JsonWriter& end_array();
  JsonWriter& key_string(const std::string& key, const std::string& value);
  JsonWriter& key_double(const std::string& key, double value);
  JsonWriter& key_int(const std::string& key, long long value);
  JsonWriter& key_bool(const std::string& key, bool value);
  JsonWriter& key_null(const std::string& key);
  JsonWriter& array_double(double value);
  std::string str() const { return out_; }

 private:
  void comma();
  std::string out_;
  std::vector<bool> need_comma_;
};

std::string complex_json(const std::string& key, std::complex<double> v);

// P5 16-bit PGM, big-endian samples, row-major from the top-left corner
std::string encode_pgm16(int width, int height, const std::vector<uint16_t>& pixels);

void write_file(const std::string& path, const std::string& content);

}  // namespace skewdyn

#endif
