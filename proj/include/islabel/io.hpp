#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "islabel/index.hpp"

namespace islabel {

// Binary index container. All integers little-endian fixed width: header
// fields and offsets 64-bit, vertex ids 32-bit, weights/distances 64-bit.
// The checksum field covers the whole file (computed with the field zeroed),
// so a bit flip anywhere is rejected on load.
//
//   0   u64  magic "ISLB"
//   8   u64  format version (1)
//  16   u64  flags: bit0 directed, bit1 vias present (path-capable), bit2 stale
//  24   u64  k
//  32   u64  vertex slots (including tombstones)
//  40   u64  top vertex count
//  48   u64  top arc count
//  56   u64  checksum (CRC-64/XZ)
//  64   u64  section count (11)
//  72   11 x (u64 offset, u64 length)     -- byte ranges within the file
// 248   section payloads
//
// Sections: 0 id map, 1 level numbers, 2 update counters, 3/4/5 label
// offsets/entries/vias, 6/7/8 the same for in-labels (directed), 9 adjacency
// snapshots, 10 top graph.

inline constexpr std::uint64_t kIndexMagic = 0x424C5349ULL;  // "ISLB"
inline constexpr std::uint64_t kIndexVersion = 1;
inline constexpr std::size_t kSectionCount = 11;
inline constexpr std::size_t kHeaderBytes = 72 + kSectionCount * 16;
inline constexpr std::size_t kChecksumOffset = 56;

enum : std::uint64_t {
    kFlagDirected = 1u << 0,
    kFlagVias = 1u << 1,
    kFlagStale = 1u << 2,
};

enum SectionId : std::size_t {
    kSecIdMap = 0,
    kSecLevels = 1,
    kSecMeta = 2,
    kSecOutOff = 3,
    kSecOutEntries = 4,
    kSecOutVias = 5,
    kSecInOff = 6,
    kSecInEntries = 7,
    kSecInVias = 8,
    kSecSnapshots = 9,
    kSecTop = 10,
};

namespace detail {

inline std::uint64_t crc64(const std::uint8_t* data, std::size_t len) {
    static const std::array<std::uint64_t, 256> table = [] {
        std::array<std::uint64_t, 256> t{};
        const std::uint64_t poly = 0xC96C5795D7870F42ULL;  // CRC-64/XZ, reflected
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint64_t c = i;
            for (int b = 0; b < 8; ++b) c = (c & 1) ? (c >> 1) ^ poly : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    std::uint64_t crc = ~0ULL;
    for (std::size_t i = 0; i < len; ++i)
        crc = table[(crc ^ data[i]) & 0xFF] ^ (crc >> 8);
    return ~crc;
}

struct ByteWriter {
    std::vector<std::uint8_t> buf;

    void u8(std::uint8_t v) { buf.push_back(v); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void patch_u64(std::size_t at, std::uint64_t v) {
        for (int i = 0; i < 8; ++i) buf[at + i] = static_cast<std::uint8_t>(v >> (8 * i));
    }
};

struct ByteReader {
    const std::uint8_t* p;
    std::size_t len;
    std::size_t pos = 0;

    void need(std::size_t n) const {
        if (pos + n > len) throw std::runtime_error("index file truncated or corrupt");
    }
    std::uint8_t u8() {
        need(1);
        return p[pos++];
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[pos + i]) << (8 * i);
        pos += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[pos + i]) << (8 * i);
        pos += 8;
        return v;
    }
};

inline void write_arc_list(ByteWriter& w, const std::vector<Arc>& arcs) {
    w.u32(static_cast<std::uint32_t>(arcs.size()));
    for (const Arc& a : arcs) {
        w.u32(a.to);
        w.u64(a.w);
        w.u32(a.mid);
    }
}

inline std::vector<Arc> read_arc_list(ByteReader& r) {
    std::uint32_t n = r.u32();
    std::vector<Arc> arcs;
    arcs.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        Arc a;
        a.to = r.u32();
        a.w = r.u64();
        a.mid = r.u32();
        arcs.push_back(a);
    }
    return arcs;
}

}  // namespace detail

inline std::vector<std::uint8_t> serialize_index(const Index& idx) {
    using detail::ByteWriter;
    ByteWriter w;
    const std::size_t n = idx.slot_count();

    w.u64(kIndexMagic);
    w.u64(kIndexVersion);
    std::uint64_t flags = 0;
    if (idx.directed) flags |= kFlagDirected;
    if (idx.path_capable) flags |= kFlagVias;
    if (idx.log.stale) flags |= kFlagStale;
    w.u64(flags);
    w.u64(idx.k);
    w.u64(n);
    std::uint64_t top_count = 0;
    for (VertexId v = 0; v < n; ++v)
        if (idx.in_top(v)) ++top_count;
    w.u64(top_count);
    w.u64(idx.top_arcs);
    w.u64(0);  // checksum, patched below
    w.u64(kSectionCount);
    std::size_t table_at = w.buf.size();
    for (std::size_t i = 0; i < kSectionCount; ++i) {
        w.u64(0);
        w.u64(0);
    }

    std::array<std::pair<std::uint64_t, std::uint64_t>, kSectionCount> sections{};
    auto begin_section = [&](SectionId id) { sections[id].first = w.buf.size(); };
    auto end_section = [&](SectionId id) {
        sections[id].second = w.buf.size() - sections[id].first;
    };

    begin_section(kSecIdMap);
    for (VertexId v = 0; v < n; ++v) w.u64(idx.ext_ids[v]);
    end_section(kSecIdMap);

    begin_section(kSecLevels);
    for (VertexId v = 0; v < n; ++v) w.u32(idx.level_of[v]);
    end_section(kSecLevels);

    begin_section(kSecMeta);
    w.u64(idx.log.inserted);
    w.u64(idx.log.deleted);
    w.u64(idx.log.touched_labels);
    end_section(kSecMeta);

    auto write_labels = [&](const LabelStore& ls, SectionId off_id, SectionId ent_id,
                            SectionId via_id) {
        begin_section(off_id);
        for (std::uint64_t o : ls.offsets()) w.u64(o);
        end_section(off_id);
        begin_section(ent_id);
        for (const LabelEntry& e : ls.entries()) {
            w.u32(e.anc);
            w.u64(e.d);
        }
        end_section(ent_id);
        begin_section(via_id);
        if (idx.path_capable) {
            for (const LabelEntry& e : ls.entries()) {
                w.u8(static_cast<std::uint8_t>(e.kind));
                w.u32(e.via);
            }
        }
        end_section(via_id);
    };
    write_labels(idx.labels, kSecOutOff, kSecOutEntries, kSecOutVias);
    if (idx.directed) {
        write_labels(idx.in_labels, kSecInOff, kSecInEntries, kSecInVias);
    } else {
        for (SectionId id : {kSecInOff, kSecInEntries, kSecInVias}) {
            begin_section(id);
            end_section(id);
        }
    }

    begin_section(kSecSnapshots);
    {
        std::uint64_t count = 0;
        for (VertexId v = 0; v < n; ++v)
            if (!idx.snap_out[v].empty() || (idx.directed && !idx.snap_in[v].empty()))
                ++count;
        w.u64(count);
        for (VertexId v = 0; v < n; ++v) {
            bool has_in = idx.directed && !idx.snap_in[v].empty();
            if (idx.snap_out[v].empty() && !has_in) continue;
            w.u32(v);
            detail::write_arc_list(w, idx.snap_out[v]);
            detail::write_arc_list(w, idx.directed ? idx.snap_in[v] : std::vector<Arc>{});
        }
    }
    end_section(kSecSnapshots);

    begin_section(kSecTop);
    {
        std::uint64_t count = 0;
        for (VertexId v = 0; v < n; ++v)
            if (idx.in_top(v) && !idx.top.out[v].empty()) ++count;
        w.u64(count);
        for (VertexId v = 0; v < n; ++v) {
            if (!idx.in_top(v) || idx.top.out[v].empty()) continue;
            w.u32(v);
            detail::write_arc_list(w, idx.top.out[v]);
        }
    }
    end_section(kSecTop);

    for (std::size_t i = 0; i < kSectionCount; ++i) {
        w.patch_u64(table_at + i * 16, sections[i].first);
        w.patch_u64(table_at + i * 16 + 8, sections[i].second);
    }
    std::uint64_t crc = detail::crc64(w.buf.data(), w.buf.size());
    w.patch_u64(kChecksumOffset, crc);
    return std::move(w.buf);
}

namespace detail {

struct Header {
    std::uint64_t flags = 0, k = 1, slots = 0, top_vertices = 0, top_arcs = 0;
    std::array<std::pair<std::uint64_t, std::uint64_t>, kSectionCount> sections{};
};

inline Header parse_and_verify_header(const std::uint8_t* data, std::size_t size) {
    if (size < kHeaderBytes) throw std::runtime_error("index file too small");
    ByteReader r{data, size};
    if (r.u64() != kIndexMagic) throw std::runtime_error("bad index magic");
    if (r.u64() != kIndexVersion) throw std::runtime_error("unsupported index version");
    Header h;
    h.flags = r.u64();
    h.k = r.u64();
    h.slots = r.u64();
    h.top_vertices = r.u64();
    h.top_arcs = r.u64();
    std::uint64_t stored_crc = r.u64();
    if (r.u64() != kSectionCount) throw std::runtime_error("bad section count");
    for (auto& [off, len] : h.sections) {
        off = r.u64();
        len = r.u64();
        if (off > size || len > size || off + len > size)
            throw std::runtime_error("section out of bounds");
    }
    // CRC over the file with the checksum field zeroed.
    std::vector<std::uint8_t> copy(data, data + size);
    for (std::size_t i = 0; i < 8; ++i) copy[kChecksumOffset + i] = 0;
    if (crc64(copy.data(), copy.size()) != stored_crc)
        throw std::runtime_error("index checksum mismatch");
    return h;
}

}  // namespace detail

inline Index deserialize_index(const std::uint8_t* data, std::size_t size) {
    detail::Header h = detail::parse_and_verify_header(data, size);
    Index idx;
    idx.directed = (h.flags & kFlagDirected) != 0;
    idx.path_capable = (h.flags & kFlagVias) != 0;
    idx.log.stale = (h.flags & kFlagStale) != 0;
    idx.k = static_cast<std::uint32_t>(h.k);
    std::size_t n = h.slots;

    auto section = [&](SectionId id) {
        return detail::ByteReader{data + h.sections[id].first, h.sections[id].second};
    };

    {
        auto r = section(kSecIdMap);
        idx.ext_ids.reserve(n);
        for (std::size_t i = 0; i < n; ++i) idx.ext_ids.push_back(r.u64());
    }
    {
        auto r = section(kSecLevels);
        idx.level_of.reserve(n);
        for (std::size_t i = 0; i < n; ++i) idx.level_of.push_back(r.u32());
    }
    {
        auto r = section(kSecMeta);
        idx.log.inserted = r.u64();
        idx.log.deleted = r.u64();
        idx.log.touched_labels = r.u64();
    }

    auto read_labels = [&](SectionId off_id, SectionId ent_id, SectionId via_id) {
        auto ro = section(off_id);
        std::vector<std::uint64_t> off;
        off.reserve(n + 1);
        for (std::size_t i = 0; i + 1 <= n + 1 && ro.pos < ro.len; ++i) off.push_back(ro.u64());
        if (off.size() != n + 1) throw std::runtime_error("label offset table corrupt");
        auto re = section(ent_id);
        auto rv = section(via_id);
        bool vias = idx.path_capable && h.sections[via_id].second > 0;
        std::vector<LabelVec> labels(n);
        for (std::size_t v = 0; v < n; ++v) {
            if (off[v] > off[v + 1]) throw std::runtime_error("label offsets not monotone");
            labels[v].reserve(off[v + 1] - off[v]);
            for (std::uint64_t i = off[v]; i < off[v + 1]; ++i) {
                LabelEntry e;
                e.anc = re.u32();
                e.d = re.u64();
                if (vias) {
                    e.kind = static_cast<ViaKind>(rv.u8());
                    e.via = rv.u32();
                } else {
                    e.kind = e.anc == static_cast<VertexId>(v) && e.d == 0
                                 ? ViaKind::Self
                                 : ViaKind::Direct;
                    e.via = kNullVertex;
                }
                labels[v].push_back(e);
            }
        }
        return LabelStore::from_vectors(std::move(labels));
    };
    idx.labels = read_labels(kSecOutOff, kSecOutEntries, kSecOutVias);
    if (idx.directed) idx.in_labels = read_labels(kSecInOff, kSecInEntries, kSecInVias);

    idx.snap_out.assign(n, {});
    if (idx.directed) idx.snap_in.assign(n, {});
    {
        auto r = section(kSecSnapshots);
        std::uint64_t count = r.u64();
        for (std::uint64_t i = 0; i < count; ++i) {
            VertexId v = r.u32();
            if (v >= n) throw std::runtime_error("snapshot vertex out of range");
            idx.snap_out[v] = detail::read_arc_list(r);
            auto in = detail::read_arc_list(r);
            if (idx.directed) idx.snap_in[v] = std::move(in);
        }
    }

    idx.top = Graph(n, idx.directed);
    {
        auto r = section(kSecTop);
        std::uint64_t count = r.u64();
        std::uint64_t arcs = 0;
        for (std::uint64_t i = 0; i < count; ++i) {
            VertexId v = r.u32();
            if (v >= n) throw std::runtime_error("top vertex out of range");
            idx.top.out[v] = detail::read_arc_list(r);
            arcs += idx.top.out[v].size();
            if (idx.directed)
                for (const Arc& a : idx.top.out[v])
                    idx.top.in[a.to].push_back(Arc{v, a.w, a.mid});
        }
        if (idx.directed)
            for (auto& lst : idx.top.in)
                std::sort(lst.begin(), lst.end(),
                          [](const Arc& a, const Arc& b) { return a.to < b.to; });
        idx.top_arcs = arcs;
        if (arcs != h.top_arcs) throw std::runtime_error("top arc count mismatch");
    }

    for (VertexId v = 0; v < n; ++v) {
        if (idx.ext_ids[v] == kTombstone) continue;
        if (idx.level_of[v] < 1 || idx.level_of[v] > idx.k)
            throw std::runtime_error("level number out of range");
    }
    idx.rebuild_ext_lookup();
    return idx;
}

inline void save_index(const Index& idx, const std::string& path) {
    auto bytes = serialize_index(idx);
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write index file: " + tmp.string());
        f.write(reinterpret_cast<const char*>(bytes.data()),
                static_cast<std::streamsize>(bytes.size()));
        if (!f) throw std::runtime_error("write failure: " + tmp.string());
    }
    fs::rename(tmp, target);  // atomic replace
}

inline Index load_index(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open index file: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                    std::istreambuf_iterator<char>());
    return deserialize_index(bytes.data(), bytes.size());
}

// Random-access label retrieval straight from the file: the checksum is
// verified once at open, after which fetching label(v) reads exactly the
// offset-delimited byte range (plus the parallel via range when present).
class IndexFileReader {
public:
    explicit IndexFileReader(const std::string& path) : path_(path) {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open index file: " + path);
        std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                        std::istreambuf_iterator<char>());
        header_ = detail::parse_and_verify_header(bytes.data(), bytes.size());
        auto ro = detail::ByteReader{bytes.data() + header_.sections[kSecOutOff].first,
                                     header_.sections[kSecOutOff].second};
        off_.reserve(header_.slots + 1);
        for (std::size_t i = 0; i < header_.slots + 1; ++i) off_.push_back(ro.u64());
        file_ = std::fopen(path.c_str(), "rb");
        if (file_ == nullptr) throw std::runtime_error("cannot reopen index file: " + path);
    }

    ~IndexFileReader() {
        if (file_ != nullptr) std::fclose(file_);
    }
    IndexFileReader(const IndexFileReader&) = delete;
    IndexFileReader& operator=(const IndexFileReader&) = delete;

    std::size_t vertex_slots() const { return header_.slots; }
    bool has_vias() const {
        return (header_.flags & kFlagVias) != 0 && header_.sections[kSecOutVias].second > 0;
    }

    // Byte range holding label(v)'s entries; its length is the offset delta
    // times the fixed entry width.
    std::pair<std::uint64_t, std::uint64_t> label_byte_range(VertexId v) const {
        check(v);
        std::uint64_t base = header_.sections[kSecOutEntries].first;
        return {base + off_[v] * kEntryBytes, (off_[v + 1] - off_[v]) * kEntryBytes};
    }

    LabelVec load_label(VertexId v) const {
        check(v);
        auto [at, len] = label_byte_range(v);
        std::vector<std::uint8_t> buf(len);
        read_at(at, buf);
        std::size_t count = len / kEntryBytes;
        LabelVec lab(count);
        detail::ByteReader r{buf.data(), buf.size()};
        for (auto& e : lab) {
            e.anc = r.u32();
            e.d = r.u64();
        }
        if (has_vias()) {
            std::vector<std::uint8_t> vbuf(count * kViaBytes);
            read_at(header_.sections[kSecOutVias].first + off_[v] * kViaBytes, vbuf);
            detail::ByteReader rv{vbuf.data(), vbuf.size()};
            for (auto& e : lab) {
                e.kind = static_cast<ViaKind>(rv.u8());
                e.via = rv.u32();
            }
        }
        return lab;
    }

private:
    void check(VertexId v) const {
        if (v >= header_.slots) throw std::out_of_range("invalid vertex id");
    }
    void read_at(std::uint64_t at, std::vector<std::uint8_t>& buf) const {
        if (buf.empty()) return;
        if (std::fseek(file_, static_cast<long>(at), SEEK_SET) != 0 ||
            std::fread(buf.data(), 1, buf.size(), file_) != buf.size())
            throw std::runtime_error("index read failure: " + path_);
    }

    std::string path_;
    detail::Header header_;
    std::vector<std::uint64_t> off_;
    std::FILE* file_ = nullptr;
};

}  // namespace islabel
