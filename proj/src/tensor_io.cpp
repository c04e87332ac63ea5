#include "semitall/tensor_io.hpp"

#include <fstream>
#include <sstream>

#include "semitall/error.hpp"

namespace semitall {

json tensor_to_json(const Tensor3& t) {
  const auto& s = t.shape();
  return json{{"shape", {s[0], s[1], s[2]}}, {"data", t.data()}};
}

Tensor3 tensor_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("shape") || !doc.contains("data"))
    fail(ErrorCode::Domain, "tensor file: expected fields 'shape' and 'data'");
  const auto& shape = doc.at("shape");
  if (!shape.is_array() || shape.size() != 3)
    fail(ErrorCode::Domain, "tensor file: shape must have three entries");
  Tensor3::Shape dims{};
  for (int i = 0; i < 3; ++i) {
    if (!shape[i].is_number_integer() || shape[i].get<long long>() < 0)
      fail(ErrorCode::Domain, "tensor file: shape entries must be nonnegative integers");
    dims[i] = shape[i].get<int>();
  }
  const auto& data = doc.at("data");
  if (!data.is_array()) fail(ErrorCode::Domain, "tensor file: data must be an array");
  std::vector<double> values;
  values.reserve(data.size());
  for (const auto& v : data) {
    if (!v.is_number()) fail(ErrorCode::Domain, "tensor file: data entries must be numbers");
    values.push_back(v.get<double>());
  }
  return Tensor3(dims, std::move(values));
}

std::string serialize_tensor(const Tensor3& t) { return dump_json(tensor_to_json(t)) + "\n"; }

Tensor3 parse_tensor(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Domain, std::string("tensor file: ") + e.what());
  }
  return tensor_from_json(doc);
}

void save_tensor(const std::filesystem::path& path, const Tensor3& t) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Domain, "cannot open " + path.string() + " for writing");
  out << serialize_tensor(t);
}

Tensor3 load_tensor(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Domain, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_tensor(ss.str());
}

}  // namespace semitall
