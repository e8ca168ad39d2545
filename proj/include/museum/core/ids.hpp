#pragma once

#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <utility>

namespace museum {

/// Strongly typed string identifier. The tag parameter keeps object, ticket,
/// node, reader and tag identifiers from being mixed up.
template <class Tag>
class Id {
 public:
  Id() = default;
  explicit Id(std::string value) : value_(std::move(value)) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const Id&, const Id&) = default;
  friend bool operator==(const Id&, const Id&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Id& id) {
    return os << id.value_;
  }

 private:
  std::string value_;
};

using TagId = Id<struct TagIdTag>;
using ObjectId = Id<struct ObjectIdTag>;
using TicketId = Id<struct TicketIdTag>;
using NodeId = Id<struct NodeIdTag>;
using ReaderId = Id<struct ReaderIdTag>;

}  // namespace museum

template <class Tag>
struct std::hash<museum::Id<Tag>> {
  std::size_t operator()(const museum::Id<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
