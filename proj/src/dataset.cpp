#include "gcw/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <regex>
#include <set>
#include <stdexcept>

#include "gcw/errors.hpp"
#include "gcw/parallel.hpp"

namespace fs = std::filesystem;

namespace gcw {

void LabeledDataset::validate() const {
    if (images.size() < 2)
        throw DataError("dataset needs at least two images");
    if (labels.size() != images.size() || names.size() != images.size())
        throw DataError("dataset images, labels and names differ in length");
    for (std::size_t l : labels)
        if (l >= class_names.size())
            throw DataError("dataset label without a class name");
    for (const auto& img : images)
        if (img.width() != images.front().width() || img.height() != images.front().height())
            throw DataError("mixed image sizes in dataset");
}

bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const bool da = std::isdigit(static_cast<unsigned char>(a[i]));
        const bool db = std::isdigit(static_cast<unsigned char>(b[j]));
        if (da && db) {
            std::size_t ie = i, je = j;
            while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
            while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
            // Compare digit runs by value: strip leading zeros, then length, then text.
            std::size_t is = i, js = j;
            while (is + 1 < ie && a[is] == '0') ++is;
            while (js + 1 < je && b[js] == '0') ++js;
            if (ie - is != je - js)
                return ie - is < je - js;
            const int c = a.compare(is, ie - is, b, js, je - js);
            if (c != 0)
                return c < 0;
            i = ie;
            j = je;
        } else {
            if (a[i] != b[j])
                return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    if (a.size() - i != b.size() - j)
        return a.size() - i < b.size() - j;
    return a < b;
}

namespace {

struct Entry {
    fs::path path;
    std::string label;
    std::string name;
};

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

bool is_integer(const std::string& s) {
    long long v;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

std::vector<Entry> read_manifest(const fs::path& root, const fs::path& manifest) {
    std::ifstream in(manifest);
    if (!in)
        throw DataError("cannot read manifest: " + manifest.string());
    std::vector<Entry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#')
            continue;
        const auto comma = line.rfind(',');
        if (comma == std::string::npos)
            throw DataError(manifest.string() + ":" + std::to_string(line_no) +
                            ": expected relative_path,label");
        Entry e;
        e.name = trim(line.substr(0, comma));
        e.label = trim(line.substr(comma + 1));
        if (e.name.empty() || e.label.empty())
            throw DataError(manifest.string() + ":" + std::to_string(line_no) +
                            ": empty path or label");
        e.path = root / e.name;
        if (!fs::is_regular_file(e.path))
            throw DataError(manifest.string() + ":" + std::to_string(line_no) +
                            ": missing file " + e.path.string());
        entries.push_back(std::move(e));
    }
    return entries;
}

std::vector<Entry> scan_coil(const fs::path& root) {
    static const std::regex pattern(R"(obj(\d+)__(\d+)\.[a-z0-9]+)", std::regex::icase);
    std::vector<Entry> entries;
    for (const auto& item : fs::directory_iterator(root)) {
        if (!item.is_regular_file())
            continue;
        const std::string file = item.path().filename().string();
        std::smatch m;
        if (!std::regex_match(file, m, pattern))
            continue;
        // Canonical integer form so "obj01" and "obj1" name the same class.
        const std::string digits = m[1].str();
        const auto nz = digits.find_first_not_of('0');
        entries.push_back({item.path(), nz == std::string::npos ? "0" : digits.substr(nz), file});
    }
    return entries;
}

}  // namespace

LabeledDataset load_dataset(const fs::path& root, const std::optional<fs::path>& manifest) {
    if (!fs::is_directory(root))
        throw DataError("dataset directory not found: " + root.string());

    std::vector<Entry> entries = manifest ? read_manifest(root, *manifest) : scan_coil(root);
    if (entries.empty())
        throw DataError(manifest ? "manifest lists no images: " + manifest->string()
                                 : "no obj<label>__<angle> images in " + root.string());

    const bool numeric = std::all_of(entries.begin(), entries.end(),
                                     [](const Entry& e) { return is_integer(e.label); });
    auto label_less = [numeric](const std::string& a, const std::string& b) {
        if (numeric)
            return std::stoll(a) < std::stoll(b);
        return a < b;
    };
    std::sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) {
        if (a.label != b.label)
            return label_less(a.label, b.label);
        return natural_less(a.name, b.name);
    });

    LabeledDataset ds;
    ds.images.resize(entries.size());
    parallel_for(entries.size(), 0, [&](std::size_t i) { ds.images[i] = load_image(entries[i].path); });

    for (const auto& e : entries) {
        if (ds.class_names.empty() || ds.class_names.back() != e.label)
            ds.class_names.push_back(e.label);
        ds.labels.push_back(ds.class_names.size() - 1);
        ds.names.push_back(e.name);
    }
    for (std::size_t i = 1; i < ds.images.size(); ++i)
        if (ds.images[i].width() != ds.images[0].width() ||
            ds.images[i].height() != ds.images[0].height())
            throw DataError("mixed image sizes: " + ds.names[0] + " vs " + ds.names[i]);
    ds.validate();
    return ds;
}

std::vector<std::size_t> indices_with_labels(const LabeledDataset& ds,
                                             std::span<const std::string> keep) {
    if (keep.empty())
        throw std::invalid_argument("subset: no labels to keep");
    std::vector<bool> wanted(ds.num_classes(), false);
    for (const auto& k : keep) {
        const auto it = std::find(ds.class_names.begin(), ds.class_names.end(), k);
        if (it == ds.class_names.end())
            throw std::invalid_argument("subset: unknown label '" + k + "'");
        wanted[static_cast<std::size_t>(it - ds.class_names.begin())] = true;
    }
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < ds.size(); ++i)
        if (wanted[ds.labels[i]])
            idx.push_back(i);
    return idx;
}

LabeledDataset subset_by_labels(const LabeledDataset& ds, std::span<const std::string> keep) {
    const auto idx = indices_with_labels(ds, keep);

    std::vector<std::size_t> remap(ds.num_classes(), SIZE_MAX);
    LabeledDataset out;
    for (std::size_t c = 0; c < ds.num_classes(); ++c) {
        const bool used = std::any_of(idx.begin(), idx.end(), [&](std::size_t i) { return ds.labels[i] == c; });
        if (used) {
            remap[c] = out.class_names.size();
            out.class_names.push_back(ds.class_names[c]);
        }
    }
    for (std::size_t i : idx) {
        out.images.push_back(ds.images[i]);
        out.labels.push_back(remap[ds.labels[i]]);
        out.names.push_back(ds.names[i]);
    }
    return out;
}

LabeledDataset resize_dataset(const LabeledDataset& ds, std::size_t width, std::size_t height) {
    LabeledDataset out = ds;
    parallel_for(out.size(), 0, [&](std::size_t i) { out.images[i] = resize(ds.images[i], width, height); });
    return out;
}

}  // namespace gcw
