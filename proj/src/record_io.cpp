/*
   Copyright 2026 The qudyne Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <type_traits>

#include "qudyne/experiment.hpp"

namespace qudyne {

namespace {

constexpr std::array<char, 8> kMagic{'Q', 'D', 'Y', 'N', 'R', 'E', 'C', '1'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderBytes = 8 + 4 + 4 + 8 + 8 + 8;

template <typename T>
void put(std::string& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.append(bytes.data(), bytes.size());
}

template <typename T>
T get(const char* in) {
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), in, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void dump(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::ios_base::failure("write failed for " + path.string());
}

}  // namespace

void write_record_binary(const MeasurementRecord& record, const std::filesystem::path& path) {
  record.validate();
  std::string bytes;
  bytes.reserve(kHeaderBytes + record.size() * 12);
  bytes.append(kMagic.data(), kMagic.size());
  put<std::uint32_t>(bytes, kVersion);
  put<std::uint32_t>(bytes, 0);
  put<double>(bytes, record.sampling_interval);
  put<std::uint64_t>(bytes, record.size());
  put<std::uint64_t>(bytes, record.seed);
  for (auto c : record.counts) put<std::uint32_t>(bytes, c);
  for (auto s : record.true_sz) put<double>(bytes, s);
  dump(path, bytes);
}

MeasurementRecord read_record_binary(const std::filesystem::path& path) {
  const std::string bytes = slurp(path);
  if (bytes.size() < kMagic.size() || !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw RecordFormatError(path.string() + ": not a qudyne record (bad magic)");
  }
  if (bytes.size() < kHeaderBytes) {
    throw RecordFormatError(path.string() + ": truncated header (" + std::to_string(bytes.size()) +
                            " bytes)");
  }
  const char* p = bytes.data() + kMagic.size();
  const auto version = get<std::uint32_t>(p);
  if (version != kVersion) {
    throw RecordFormatError(path.string() + ": unsupported record version " +
                            std::to_string(version));
  }
  MeasurementRecord record;
  record.sampling_interval = get<double>(p + 8);
  const auto shots = get<std::uint64_t>(p + 16);
  record.seed = get<std::uint64_t>(p + 24);
  if (!(record.sampling_interval > 0.0) || !std::isfinite(record.sampling_interval)) {
    throw RecordFormatError(path.string() + ": sampling interval must be positive");
  }
  if (shots > (bytes.size() - kHeaderBytes) / 12 || bytes.size() != kHeaderBytes + shots * 12) {
    throw RecordFormatError(path.string() + ": payload size does not match shot count " +
                            std::to_string(shots));
  }
  record.counts.resize(shots);
  record.true_sz.resize(shots);
  const char* body = bytes.data() + kHeaderBytes;
  for (std::uint64_t i = 0; i < shots; ++i) record.counts[i] = get<std::uint32_t>(body + 4 * i);
  body += 4 * shots;
  for (std::uint64_t i = 0; i < shots; ++i) record.true_sz[i] = get<double>(body + 8 * i);
  return record;
}

void write_record_csv(const MeasurementRecord& record, const std::filesystem::path& path) {
  record.validate();
  std::ostringstream out;
  out << std::setprecision(17);
  out << "# qudyne record\n";
  out << "# sampling_interval_s," << record.sampling_interval << '\n';
  out << "# seed," << record.seed << '\n';
  out << "shot,count,true_sz\n";
  for (std::size_t i = 0; i < record.size(); ++i) {
    out << i << ',' << record.counts[i] << ',' << record.true_sz[i] << '\n';
  }
  dump(path, out.str());
}

MeasurementRecord read_record_csv(const std::filesystem::path& path) {
  std::istringstream in(slurp(path));
  MeasurementRecord record;
  bool have_interval = false;
  bool have_columns = false;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw RecordFormatError(path.string() + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto comma = line.find(',');
      if (comma == std::string::npos) continue;
      const std::string key = line.substr(2, comma - 2);
      const std::string value = line.substr(comma + 1);
      try {
        if (key == "sampling_interval_s") {
          record.sampling_interval = std::stod(value);
          have_interval = true;
        } else if (key == "seed") {
          record.seed = std::stoull(value);
        }
      } catch (const std::exception&) {
        fail("bad header value '" + value + "'");
      }
      continue;
    }
    if (!have_columns) {
      if (line != "shot,count,true_sz") fail("expected column header shot,count,true_sz");
      have_columns = true;
      continue;
    }
    std::istringstream row(line);
    std::string shot, count, sz;
    if (!std::getline(row, shot, ',') || !std::getline(row, count, ',') || !std::getline(row, sz)) {
      fail("expected three columns");
    }
    try {
      if (std::stoull(shot) != record.size()) fail("shot indices must be consecutive from 0");
      const long long c = std::stoll(count);
      if (c < 0 || c > 0xFFFFFFFFLL) fail("count out of range");
      record.counts.push_back(static_cast<std::uint32_t>(c));
      record.true_sz.push_back(std::stod(sz));
    } catch (const RecordFormatError&) {
      throw;
    } catch (const std::exception&) {
      fail("unparseable row '" + line + "'");
    }
  }
  if (!have_interval || !(record.sampling_interval > 0.0)) {
    throw RecordFormatError(path.string() + ": missing or invalid sampling_interval_s header");
  }
  if (!have_columns) throw RecordFormatError(path.string() + ": missing column header");
  return record;
}

MeasurementRecord read_record(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  std::array<char, 8> head{};
  in.read(head.data(), head.size());
  if (in.gcount() == 8 && head == kMagic) return read_record_binary(path);
  if (in.gcount() > 0 && head[0] == '#') return read_record_csv(path);
  throw RecordFormatError(path.string() + ": unrecognised record format");
}

}  // namespace qudyne
