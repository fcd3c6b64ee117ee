#include "geocolumn/footer.hpp"

#include "geocolumn/error.hpp"

#include <bit>
#include <cmath>

namespace geocolumn {

void StatsInfo::add(double v) {
	if (std::isnan(v)) {
		++null_count;
	} else {
		min = std::min(min, v);
		max = std::max(max, v);
	}
	++value_count;
}

void StatsInfo::fold(const StatsInfo &other) {
	min = std::min(min, other.min);
	max = std::max(max, other.max);
	value_count += other.value_count;
	null_count += other.null_count;
}

const ColumnChunkInfo *RowGroupInfo::find_chunk(ColumnId id) const {
	for (const ColumnChunkInfo &chunk : chunks) {
		if (chunk.column == id) {
			return &chunk;
		}
	}
	return nullptr;
}

namespace {

class Builder {
public:
	void u8(uint8_t v) {
		out_.push_back(v);
	}
	void u32(uint32_t v) {
		for (int i = 0; i < 4; ++i) {
			out_.push_back(uint8_t(v >> (8 * i)));
		}
	}
	void u64(uint64_t v) {
		for (int i = 0; i < 8; ++i) {
			out_.push_back(uint8_t(v >> (8 * i)));
		}
	}
	void f64(double v) {
		u64(std::bit_cast<uint64_t>(v));
	}
	void str(const std::string &s) {
		u32(uint32_t(s.size()));
		out_.insert(out_.end(), s.begin(), s.end());
	}
	std::vector<uint8_t> take() {
		return std::move(out_);
	}

private:
	std::vector<uint8_t> out_;
};

class Cursor {
public:
	explicit Cursor(std::span<const uint8_t> bytes) : bytes_(bytes) {
	}

	uint8_t u8() {
		return uint8_t(fixed(1));
	}
	uint32_t u32() {
		return uint32_t(fixed(4));
	}
	uint64_t u64() {
		return fixed(8);
	}
	double f64() {
		return std::bit_cast<double>(fixed(8));
	}
	std::string str() {
		uint32_t n = u32();
		if (bytes_.size() - pos_ < n) {
			fail();
		}
		std::string s(reinterpret_cast<const char *>(bytes_.data() + pos_), n);
		pos_ += n;
		return s;
	}
	bool done() const {
		return pos_ == bytes_.size();
	}

private:
	[[noreturn]] static void fail() {
		throw CorruptionError("footer truncated");
	}

	uint64_t fixed(unsigned n) {
		if (bytes_.size() - pos_ < n) {
			fail();
		}
		uint64_t v = 0;
		for (unsigned i = 0; i < n; ++i) {
			v |= uint64_t(bytes_[pos_ + i]) << (8 * i);
		}
		pos_ += n;
		return v;
	}

	std::span<const uint8_t> bytes_;
	size_t pos_ = 0;
};

void put_stats(Builder &b, const StatsInfo &s) {
	b.f64(s.min);
	b.f64(s.max);
	b.u64(s.value_count);
	b.u64(s.null_count);
}

StatsInfo get_stats(Cursor &c) {
	StatsInfo s;
	s.min = c.f64();
	s.max = c.f64();
	s.value_count = c.u64();
	s.null_count = c.u64();
	return s;
}

} // namespace

std::vector<uint8_t> serialize_footer(const Footer &footer) {
	Builder b;
	b.u32(footer.version);
	b.u8(footer.has_ids ? 1 : 0);
	b.u8(footer.compression);
	b.u8(footer.sort);
	b.u8(footer.encoding);
	b.u64(footer.record_count);
	b.u64(footer.page_size);
	b.u64(footer.batch_size);
	b.f64(footer.bbox.min_x);
	b.f64(footer.bbox.min_y);
	b.f64(footer.bbox.max_x);
	b.f64(footer.bbox.max_y);
	b.str(footer.writer);
	b.u32(uint32_t(footer.row_groups.size()));
	for (const RowGroupInfo &rg : footer.row_groups) {
		b.u64(rg.first_record);
		b.u64(rg.record_count);
		b.u64(rg.offset);
		b.u64(rg.byte_length);
		b.u32(uint32_t(rg.chunks.size()));
		for (const ColumnChunkInfo &chunk : rg.chunks) {
			b.u8(uint8_t(chunk.column));
			put_stats(b, chunk.stats);
			b.u32(uint32_t(chunk.pages.size()));
			for (const PageInfo &page : chunk.pages) {
				b.u64(page.offset);
				b.u64(page.stored_bytes);
				b.u64(page.uncompressed_bytes);
				b.u64(page.first_record);
				b.u64(page.record_count);
				b.u8(page.encoding);
				b.u8(page.compression);
				b.u8(page.rep_phase);
				put_stats(b, page.stats);
			}
		}
	}
	return b.take();
}

Footer parse_footer(std::span<const uint8_t> bytes) {
	Cursor c(bytes);
	Footer f;
	f.version = c.u32();
	if (f.version != kFormatVersion) {
		throw FormatError("unsupported format version " + std::to_string(f.version));
	}
	f.has_ids = c.u8() != 0;
	f.compression = c.u8();
	f.sort = c.u8();
	f.encoding = c.u8();
	f.record_count = c.u64();
	f.page_size = c.u64();
	f.batch_size = c.u64();
	f.bbox.min_x = c.f64();
	f.bbox.min_y = c.f64();
	f.bbox.max_x = c.f64();
	f.bbox.max_y = c.f64();
	f.writer = c.str();
	uint32_t groups = c.u32();
	f.row_groups.reserve(groups);
	for (uint32_t g = 0; g < groups; ++g) {
		RowGroupInfo rg;
		rg.first_record = c.u64();
		rg.record_count = c.u64();
		rg.offset = c.u64();
		rg.byte_length = c.u64();
		uint32_t chunks = c.u32();
		rg.chunks.reserve(chunks);
		for (uint32_t ci = 0; ci < chunks; ++ci) {
			ColumnChunkInfo chunk;
			uint8_t column = c.u8();
			if (column > uint8_t(ColumnId::Id)) {
				throw FormatError("unknown column id " + std::to_string(column));
			}
			chunk.column = ColumnId(column);
			chunk.stats = get_stats(c);
			uint32_t pages = c.u32();
			chunk.pages.reserve(pages);
			for (uint32_t p = 0; p < pages; ++p) {
				PageInfo page;
				page.offset = c.u64();
				page.stored_bytes = c.u64();
				page.uncompressed_bytes = c.u64();
				page.first_record = c.u64();
				page.record_count = c.u64();
				page.encoding = c.u8();
				page.compression = c.u8();
				page.rep_phase = c.u8();
				page.stats = get_stats(c);
				chunk.pages.push_back(page);
			}
			rg.chunks.push_back(std::move(chunk));
		}
		f.row_groups.push_back(std::move(rg));
	}
	if (!c.done()) {
		throw CorruptionError("trailing bytes after footer");
	}
	return f;
}

} // namespace geocolumn
