#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace cdqa {

using Date = std::chrono::sys_days;

/// Strict YYYY-MM-DD. Returns nullopt for anything else, including
/// impossible calendar dates.
std::optional<Date> parse_iso_date(std::string_view text);
std::string format_iso_date(Date date);

/// Currency amount held in cents.
class Money {
 public:
  Money() = default;
  static Money from_cents(std::int64_t cents) { return Money(cents); }
  static Money from_decimal(double amount);
  std::int64_t cents() const { return cents_; }
  double as_decimal() const { return static_cast<double>(cents_) / 100.0; }
  friend auto operator<=>(const Money&, const Money&) = default;

 private:
  explicit Money(std::int64_t cents) : cents_(cents) {}
  std::int64_t cents_ = 0;
};

struct RoomType {
  std::string id;
  std::string name;
  int capacity = 1;
  Money nightly_rate;
  int total_units = 1;
};

/// Occupies the nights [check_in, check_out).
struct Booking {
  std::string room_id;
  Date check_in;
  Date check_out;
  int units = 1;
};

struct RoomAvailability {
  const RoomType* room = nullptr;
  int available_units = 0;

  nlohmann::json to_json() const;
};

class InventoryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Room types and bookings loaded from {"rooms": [...], "bookings": [...]}.
class RoomInventory {
 public:
  RoomInventory(std::vector<RoomType> rooms, std::vector<Booking> bookings);

  static RoomInventory from_json(const nlohmann::json& j);
  static RoomInventory load(const std::filesystem::path& path);

  const std::vector<RoomType>& rooms() const { return rooms_; }
  const std::vector<Booking>& bookings() const { return bookings_; }

  /// Rooms that fit `guests` and have at least one free unit on every night
  /// of [check_in, check_out), in file order. available_units is the minimum
  /// free count across those nights. Requires check_out > check_in and
  /// guests >= 1.
  std::vector<RoomAvailability> search(Date check_in, Date check_out, int guests) const;

 private:
  std::vector<RoomType> rooms_;
  std::vector<Booking> bookings_;
};

}  // namespace cdqa
