"""Command line surface: replay runs, config files, dumps, serve mode."""

import json
import subprocess
import sys

from cellbreak import cli
from cellbreak.engine import GameConfig, parse_script, run_replay


def parse_kv(text):
    out = {}
    for line in text.strip().splitlines():
        key, _, value = line.partition("=")
        out[key] = value
    return out


def write_script(tmp_path, text):
    path = tmp_path / "session.script"
    path.write_text(text)
    return str(path)


class TestReplayCommand:
    def test_empty_run_reports_welcome(self, tmp_path, capsys):
        assert cli.main(["--seed", "5"]) == 0
        values = parse_kv(capsys.readouterr().out)
        assert values["score"] == "0"
        assert values["lives"] == "3"
        assert values["phase"] == "welcome"
        assert len(values["frame_hash"]) == 16

    def test_script_and_dump(self, tmp_path, capsys):
        script = write_script(tmp_path, "KEY\n" + "\n" * 20 + "ESC\n")
        dump_path = tmp_path / "final.dump"
        assert (
            cli.main(
                ["--seed", "9", "--script", script, "--dump-final-frame", str(dump_path)]
            )
            == 0
        )
        values = parse_kv(capsys.readouterr().out)
        assert values["phase"] == "quit"
        content = dump_path.read_text(encoding="latin-1")
        assert content.startswith("80 30\n")
        assert len(content.splitlines()) == 1 + 2 * 30

    def test_matches_library_result(self, tmp_path, capsys):
        text = "KEY\n" + "RIGHT\n" * 10 + "\n" * 50
        script_path = write_script(tmp_path, text)
        assert cli.main(["--seed", "33", "--script", script_path]) == 0
        values = parse_kv(capsys.readouterr().out)
        expected = run_replay(GameConfig(), 33, parse_script(text))
        assert values["score"] == str(expected.state.score)
        assert values["frame_hash"] == format(expected.frame_hash, "016x")

    def test_config_overrides(self, tmp_path, capsys):
        config_path = tmp_path / "config.json"
        config_path.write_text(json.dumps({"lives": 5, "width": 40, "blocks_per_row": 5}))
        assert cli.main(["--config", str(config_path)]) == 0
        values = parse_kv(capsys.readouterr().out)
        assert values["lives"] == "5"

    def test_bad_config_key_fails(self, tmp_path, capsys):
        config_path = tmp_path / "config.json"
        config_path.write_text(json.dumps({"not_a_field": 1}))
        assert cli.main(["--config", str(config_path)]) == 2

    def test_bad_script_token_fails(self, tmp_path, capsys):
        script = write_script(tmp_path, "JUMP\n")
        assert cli.main(["--script", script]) == 2


class TestServeMode:
    def run_serve(self, lines, seed="5", extra=()):
        # frames are latin-1 bytes on the wire
        proc = subprocess.run(
            [sys.executable, "-m", "cellbreak", "--serve", "--seed", seed, *extra],
            input="".join(line + "\n" for line in lines),
            capture_output=True,
            encoding="latin-1",
            timeout=60,
        )
        assert proc.returncode == 0, proc.stderr
        return proc.stdout

    def parse_blocks(self, output):
        blocks = []
        lines = output.splitlines()
        pos = 0
        while pos < len(lines):
            width, height = map(int, lines[pos].split())
            frame = lines[pos : pos + 1 + 2 * height]
            pos += 1 + 2 * height
            status = parse_kv("\n".join(lines[pos : pos + 3]))
            pos += 3
            assert lines[pos] == ""
            pos += 1
            blocks.append((width, height, frame, status))
        return blocks

    def test_initial_frame_then_tick_responses(self):
        output = self.run_serve(["KEY", "", "LEFT"])
        blocks = self.parse_blocks(output)
        assert len(blocks) == 4  # initial + 3 ticks
        assert blocks[0][3]["phase"] == "welcome"
        assert blocks[1][3]["phase"] == "playing"
        assert all(b[0] == 80 and b[1] == 30 for b in blocks)

    def test_esc_reports_quit(self):
        output = self.run_serve(["ESC"])
        blocks = self.parse_blocks(output)
        assert blocks[-1][3]["phase"] == "quit"

    def test_serve_matches_replay(self):
        lines = ["KEY"] + [""] * 30
        output = self.run_serve(lines, seed="77")
        blocks = self.parse_blocks(output)
        expected = run_replay(GameConfig(), 77, parse_script("".join(l + "\n" for l in lines)))
        assert blocks[-1][3]["score"] == str(expected.state.score)
        assert blocks[-1][3]["phase"] == expected.state.phase.value


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "cellbreak", "--seed", "1"],
            capture_output=True,
            text=True,
            timeout=60,
        )
        assert proc.returncode == 0
        assert "phase=welcome" in proc.stdout
