#include "swf/cli/cache.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <unistd.h>

namespace swf::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kEntryTag = "swfcalc-cache";
constexpr const char* kSuffix = ".json";

} // namespace

fs::path default_cache_dir()
{
    if (const char* env = std::getenv("SWFCALC_CACHE"); env && *env) return env;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "swfcalc";
    if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "swfcalc";
    return fs::temp_directory_path() / "swfcalc-cache";
}

std::string sha256_hex(const std::string& bytes)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr);
    std::ostringstream o;
    for (unsigned int n = 0; n < len; ++n) o << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[n]);
    return o.str();
}

Cache::Cache(std::optional<fs::path> dir, std::string version, std::ostream& warn)
    : dir_(std::move(dir)), version_(std::move(version)), warn_(warn)
{
    if (!dir_) return;
    std::error_code ec;
    fs::create_directories(*dir_, ec);
    if (ec || !fs::is_directory(*dir_)) {
        disable("cannot create " + dir_->string());
        return;
    }
    if (::access(dir_->c_str(), W_OK) != 0) disable(dir_->string() + " is not writable");
}

void Cache::disable(const std::string& why)
{
    warn_ << "swfcalc: warning: cache disabled: " << why << "\n";
    dir_.reset();
}

fs::path Cache::entry_path(const std::string& key) const
{
    return *dir_ / (key + kSuffix);
}

std::optional<Result> Cache::lookup(const std::string& key)
{
    if (!dir_) return std::nullopt;
    const fs::path p = entry_path(key);
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream buf;
    buf << in.rdbuf();
    in.close();

    bool valid = false;
    Result result;
    try {
        Result entry = Result::parse(buf.str());
        valid = entry.is_object() && entry.value("format", "") == kEntryTag && entry.value("version", "") == version_ &&
                entry.value("key", "") == key && entry.contains("result") && entry.at("result").is_object();
        if (valid) result = std::move(entry.at("result"));
    } catch (const nlohmann::json::exception&) {
        valid = false;
    }
    if (!valid) {
        std::error_code ec;
        fs::remove(p, ec);
        return std::nullopt;
    }
    return result;
}

void Cache::store(const std::string& key, const Result& value)
{
    if (!dir_) return;
    Result entry;
    entry["format"] = kEntryTag;
    entry["version"] = version_;
    entry["key"] = key;
    entry["result"] = value;

    std::random_device rd;
    const fs::path tmp = *dir_ / (key + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(rd()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << entry.dump();
        out.close();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            disable("cannot write " + tmp.string());
            return;
        }
    }
    std::error_code ec;
    fs::rename(tmp, entry_path(key), ec);
    if (ec) {
        fs::remove(tmp, ec);
        disable("cannot rename into " + dir_->string());
    }
}

Cache::Stats Cache::stats() const
{
    Stats s;
    if (!dir_) return s;
    for (const auto& e : fs::directory_iterator(*dir_)) {
        if (e.is_regular_file() && e.path().extension() == kSuffix) {
            ++s.entries;
            s.bytes += e.file_size();
        }
    }
    return s;
}

std::size_t Cache::clear()
{
    std::size_t removed = 0;
    if (!dir_) return removed;
    std::vector<fs::path> doomed;
    for (const auto& e : fs::directory_iterator(*dir_)) {
        const std::string name = e.path().filename().string();
        if (e.is_regular_file() && (e.path().extension() == kSuffix || name.find(".tmp.") != std::string::npos)) {
            doomed.push_back(e.path());
        }
    }
    for (const auto& p : doomed) {
        std::error_code ec;
        if (fs::remove(p, ec)) ++removed;
    }
    return removed;
}

} // namespace swf::cli
