import pytest

from pcbz import (ContainerFormatError, CorruptContainerError,
                  NotAContainerError, PredictorSpec, compress_blocks,
                  read_container, write_container)
from pcbz.blocks import BlockPlan
from pcbz.container import HEADER_SIZE, blocks_for_frame


def one_frame_container(spec=PredictorSpec(False, 0), payload=b"example payload",
                        block_size=4096):
    blocks = compress_blocks(payload, block_size=block_size)
    return write_container(5, 3, 2, 2, block_size, [(spec, blocks)]), blocks


class TestWrite:
    def test_leading_bytes(self):
        data, _ = one_frame_container()
        assert data[:5] == bytes([0x50, 0x43, 0x42, 0x5A, 0x01])  # "PCBZ", version 1

    def test_header_size_constant(self):
        assert HEADER_SIZE == 28

    def test_overhead_formula(self):
        # 28 + F*(8 + 8*B) bytes beyond the payloads
        for n_frames, payload in [(1, b"x" * 100), (3, b"y" * 5000)]:
            block_size = 1024
            frames = []
            for _ in range(n_frames):
                frames.append((PredictorSpec(False, 2), compress_blocks(payload, block_size)))
            data = write_container(9, 9, 3, 3, block_size, frames)
            payload_total = sum(b.total_compressed for _, b in frames)
            n_blocks = frames[0][1].plan.block_count
            assert len(data) - payload_total == 28 + n_frames * (8 + 8 * n_blocks)

    def test_deterministic(self):
        a, _ = one_frame_container()
        b, _ = one_frame_container()
        assert a == b

    def test_rejects_temporal_frame0(self):
        blocks = compress_blocks(b"data", 1024)
        with pytest.raises(ValueError):
            write_container(2, 2, 1, 1, 1024, [(PredictorSpec(True, 1), blocks)])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            write_container(2, 2, 1, 1, 1024, [])


class TestRoundTrip:
    def test_fields_echo(self):
        spec = PredictorSpec(False, 7)
        blocks = compress_blocks(b"q" * 9000, block_size=2048)
        data = write_container(31, 17, 5, 4, 2048, [(spec, blocks)])
        header, records, payloads = read_container(data)
        assert (header.width, header.height) == (31, 17)
        assert (header.pitch_x, header.pitch_y) == (5, 4)
        assert header.frame_count == 1
        assert header.block_size == 2048
        assert header.temporal_used is False
        assert records[0].spec == spec
        assert records[0].block_sizes == blocks.compressed_sizes
        assert [bytes(p) for p in payloads[0]] == list(blocks.payloads)

    def test_multi_frame_temporal_flag(self):
        b0 = compress_blocks(b"a" * 100, 64)
        b1 = compress_blocks(b"b" * 50, 64)
        data = write_container(4, 4, 1, 1, 64,
                               [(PredictorSpec(False, 0), b0), (PredictorSpec(True, 3), b1)])
        header, records, _ = read_container(data)
        assert header.temporal_used is True
        assert records[1].spec == PredictorSpec(True, 3)

    def test_blocks_for_frame_reconstruction(self):
        payload = bytes(range(256)) * 40
        blocks = compress_blocks(payload, block_size=1000)
        data = write_container(2, 2, 1, 1, 1000, [(PredictorSpec(False, 0), blocks)])
        header, records, payloads = read_container(data)
        rebuilt = blocks_for_frame(header, records[0], payloads[0])
        assert rebuilt.plan == BlockPlan(1000, blocks.plan.block_count)
        assert rebuilt.payloads == blocks.payloads


class TestValidation:
    def test_wrong_magic(self):
        data, _ = one_frame_container()
        with pytest.raises(NotAContainerError):
            read_container(b"KLB" + data[3:])

    def test_too_short_for_magic(self):
        with pytest.raises(NotAContainerError):
            read_container(b"PC")

    def test_truncated_header(self):
        data, _ = one_frame_container()
        with pytest.raises(CorruptContainerError):
            read_container(data[:20])

    def test_unsupported_version(self):
        data, _ = one_frame_container()
        bad = bytearray(data)
        bad[4] = 9
        with pytest.raises(ContainerFormatError) as exc:
            read_container(bytes(bad))
        assert "version" in str(exc.value)

    def test_unsupported_bit_depth(self):
        data, _ = one_frame_container()
        bad = bytearray(data)
        bad[6] = 8
        with pytest.raises(ContainerFormatError):
            read_container(bytes(bad))

    def test_invalid_predictor_byte(self):
        data, _ = one_frame_container()
        bad = bytearray(data)
        bad[HEADER_SIZE] = 0x7F
        with pytest.raises(CorruptContainerError) as exc:
            read_container(bytes(bad))
        assert "frame 0" in str(exc.value)

    def test_temporal_frame0_rejected_on_read(self):
        data, _ = one_frame_container(spec=PredictorSpec(False, 1))
        bad = bytearray(data)
        bad[HEADER_SIZE] = PredictorSpec(True, 1).to_byte()
        with pytest.raises(CorruptContainerError):
            read_container(bytes(bad))

    def test_truncated_payload_names_location(self):
        data, _ = one_frame_container()
        with pytest.raises(CorruptContainerError) as exc:
            read_container(data[:-4])
        assert "frame 0" in str(exc.value) and "block" in str(exc.value)

    def test_trailing_garbage(self):
        data, _ = one_frame_container()
        with pytest.raises(CorruptContainerError) as exc:
            read_container(data + b"xx")
        assert "trailing" in str(exc.value)

    def test_truncated_block_table(self):
        data, _ = one_frame_container()
        with pytest.raises(CorruptContainerError):
            read_container(data[:HEADER_SIZE + 6])
