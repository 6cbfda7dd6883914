// Copyright 2026 The amtool Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AMTOOL_REQUEST_TYPE_HPP_
#define AMTOOL_REQUEST_TYPE_HPP_

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace amtool {

// Reserved marker for the root source; never a valid source name.
inline constexpr std::string_view kRootMarker = "root";

bool IsValidSourceName(std::string_view name);

// Finite map from source names to request types. Entries are kept sorted by
// name, so equality and ordering are structural and independent of
// insertion order.
class RequestType {
 public:
  struct Entry;

  RequestType() = default;

  bool empty() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }
  bool Contains(std::string_view source) const { return Find(source) != nullptr; }
  const RequestType* Find(std::string_view source) const;
  // Throws kMissingSource.
  const RequestType& At(std::string_view source) const;

  void Set(const std::string& source, RequestType request);
  void Erase(std::string_view source);

  const std::vector<Entry>& entries() const { return entries_; }
  std::vector<std::string> Domain() const;

  // "[]" for the empty type, otherwise e.g. "[O[S],S]".
  std::string ToString() const;
  // Comma separated entries without the outer brackets: "O[S],S".
  std::string EntriesToString() const;

  friend bool operator==(const RequestType& a, const RequestType& b);
  friend std::strong_ordering operator<=>(const RequestType& a, const RequestType& b);

 private:
  std::vector<Entry> entries_;
};

struct RequestType::Entry {
  std::string source;
  RequestType request;
};

// Parses either "[]" / "[...]" or a bare entry list "O[S],S".
// Throws kMalformedType.
RequestType ParseRequestType(std::string_view text);

}  // namespace amtool

#endif  // AMTOOL_REQUEST_TYPE_HPP_
