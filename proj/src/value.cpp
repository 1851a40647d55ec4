#include "teamsem/value.hpp"

#include <charconv>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace teamsem {
namespace {

struct Entry {
  std::string token;
  bool is_int = false;
  long long num = 0;
};

struct Registry {
  std::mutex mu;
  std::vector<Entry> entries;
  std::unordered_map<std::string, Value> ids;
};

Registry& registry() {
  static Registry* r = new Registry();  // leaked on purpose, lives for the process
  return *r;
}

Entry make_entry(const std::string& token) {
  Entry e;
  e.token = token;
  const char* b = token.data();
  const char* end = b + token.size();
  long long n = 0;
  auto [p, ec] = std::from_chars(b, end, n);
  if (ec == std::errc() && p == end) {
    e.is_int = true;
    e.num = n;
  }
  return e;
}

}  // namespace

Value intern_value(const std::string& token) {
  Registry& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  auto it = r.ids.find(token);
  if (it != r.ids.end()) return it->second;
  Value id = static_cast<Value>(r.entries.size());
  r.entries.push_back(make_entry(token));
  r.ids.emplace(token, id);
  return id;
}

const std::string& value_token(Value v) {
  Registry& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  if (v >= r.entries.size()) throw std::out_of_range("unknown value id");
  return r.entries[v].token;
}

bool value_less(Value a, Value b) {
  if (a == b) return false;
  Registry& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  const Entry& ea = r.entries.at(a);
  const Entry& eb = r.entries.at(b);
  if (ea.is_int != eb.is_int) return ea.is_int;  // numbers sort first
  if (ea.is_int && ea.num != eb.num) return ea.num < eb.num;
  return ea.token < eb.token;
}

bool row_less(const std::vector<Value>& a, const std::vector<Value>& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return value_less(a[i], b[i]);
  }
  return a.size() < b.size();
}

}  // namespace teamsem
