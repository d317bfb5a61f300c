#include "cdqa/rooms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

namespace cdqa {
namespace {

bool parse_digits(std::string_view s, int& out) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return std::from_chars(s.data(), s.data() + s.size(), out).ec == std::errc{};
}

int positive_int(const nlohmann::json& obj, const char* key, std::string_view where) {
  if (!obj.contains(key) || !obj[key].is_number_integer() || obj[key].get<std::int64_t>() < 1 ||
      obj[key].get<std::int64_t>() > 1'000'000) {
    throw InventoryError(std::string(where) + ": \"" + key + "\" must be a positive integer");
  }
  return obj[key].get<int>();
}

std::string string_field(const nlohmann::json& obj, const char* key, std::string_view where) {
  if (!obj.contains(key) || !obj[key].is_string() || obj[key].get<std::string>().empty()) {
    throw InventoryError(std::string(where) + ": \"" + key + "\" must be a non-empty string");
  }
  return obj[key].get<std::string>();
}

Date date_field(const nlohmann::json& obj, const char* key, std::string_view where) {
  const auto text = string_field(obj, key, where);
  const auto d = parse_iso_date(text);
  if (!d) throw InventoryError(std::string(where) + ": \"" + key + "\" is not a YYYY-MM-DD date");
  return *d;
}

}  // namespace

std::optional<Date> parse_iso_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_digits(text.substr(0, 4), y) || !parse_digits(text.substr(5, 2), m) ||
      !parse_digits(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date{ymd};
}

std::string format_iso_date(Date date) {
  const std::chrono::year_month_day ymd{date};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

Money Money::from_decimal(double amount) {
  if (!std::isfinite(amount) || amount < 0.0) throw InventoryError("nightly_rate must be a non-negative amount");
  return Money(std::llround(amount * 100.0));
}

nlohmann::json RoomAvailability::to_json() const {
  return {{"id", room->id},
          {"name", room->name},
          {"capacity", room->capacity},
          {"nightly_rate", room->nightly_rate.as_decimal()},
          {"available_units", available_units}};
}

RoomInventory::RoomInventory(std::vector<RoomType> rooms, std::vector<Booking> bookings)
    : rooms_(std::move(rooms)), bookings_(std::move(bookings)) {
  std::unordered_set<std::string> ids;
  for (const auto& r : rooms_) {
    if (r.id.empty()) throw InventoryError("room with empty id");
    if (!ids.insert(r.id).second) throw InventoryError("duplicate room id '" + r.id + "'");
    if (r.capacity < 1) throw InventoryError("room '" + r.id + "': capacity must be >= 1");
    if (r.total_units < 1) throw InventoryError("room '" + r.id + "': total_units must be >= 1");
  }
  for (const auto& b : bookings_) {
    if (ids.count(b.room_id) == 0) throw InventoryError("booking for unknown room '" + b.room_id + "'");
    if (b.check_out <= b.check_in) {
      throw InventoryError("booking for '" + b.room_id + "': check_out must be after check_in");
    }
    if (b.units < 1) throw InventoryError("booking for '" + b.room_id + "': units must be >= 1");
  }
}

RoomInventory RoomInventory::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rooms") || !j["rooms"].is_array()) {
    throw InventoryError("rooms file: expected an object with a \"rooms\" array");
  }
  std::vector<RoomType> rooms;
  for (std::size_t i = 0; i < j["rooms"].size(); ++i) {
    const auto& r = j["rooms"][i];
    const auto where = "rooms[" + std::to_string(i) + "]";
    if (!r.is_object()) throw InventoryError(where + ": not an object");
    RoomType room;
    room.id = string_field(r, "id", where);
    room.name = r.contains("name") && r["name"].is_string() ? r["name"].get<std::string>() : room.id;
    room.capacity = positive_int(r, "capacity", where);
    room.total_units = positive_int(r, "total_units", where);
    if (!r.contains("nightly_rate") || !r["nightly_rate"].is_number()) {
      throw InventoryError(where + ": \"nightly_rate\" must be a number");
    }
    room.nightly_rate = Money::from_decimal(r["nightly_rate"].get<double>());
    rooms.push_back(std::move(room));
  }
  std::vector<Booking> bookings;
  if (j.contains("bookings")) {
    if (!j["bookings"].is_array()) throw InventoryError("rooms file: \"bookings\" must be an array");
    for (std::size_t i = 0; i < j["bookings"].size(); ++i) {
      const auto& b = j["bookings"][i];
      const auto where = "bookings[" + std::to_string(i) + "]";
      if (!b.is_object()) throw InventoryError(where + ": not an object");
      bookings.push_back(Booking{string_field(b, "room_id", where), date_field(b, "check_in", where),
                                 date_field(b, "check_out", where), positive_int(b, "units", where)});
    }
  }
  return RoomInventory(std::move(rooms), std::move(bookings));
}

RoomInventory RoomInventory::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InventoryError("cannot open rooms file " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw InventoryError("rooms file " + path.string() + ": " + e.what());
  }
}

std::vector<RoomAvailability> RoomInventory::search(Date check_in, Date check_out, int guests) const {
  if (check_out <= check_in) throw std::invalid_argument("check_out must be after check_in");
  if (guests < 1) throw std::invalid_argument("guests must be at least 1");

  const auto nights = static_cast<std::size_t>((check_out - check_in).count());
  std::unordered_map<std::string, std::vector<int>> booked;  // room -> units per night
  for (const auto& b : bookings_) {
    const auto lo = std::max(b.check_in, check_in);
    const auto hi = std::min(b.check_out, check_out);
    if (lo >= hi) continue;
    auto& per_night = booked[b.room_id];
    if (per_night.empty()) per_night.assign(nights, 0);
    for (auto d = lo; d < hi; d += std::chrono::days{1}) {
      per_night[static_cast<std::size_t>((d - check_in).count())] += b.units;
    }
  }

  std::vector<RoomAvailability> out;
  for (const auto& room : rooms_) {
    if (room.capacity < guests) continue;
    int free = room.total_units;
    if (const auto it = booked.find(room.id); it != booked.end()) {
      for (int used : it->second) free = std::min(free, room.total_units - used);
    }
    if (free >= 1) out.push_back(RoomAvailability{&room, free});
  }
  return out;
}

}  // namespace cdqa
