"""Config parsing, presets, sweeps, and file output."""

import dataclasses

import numpy as np
import pytest
import yaml

from collisim.dynamics import ProtocolMode
from collisim.network import CouplingKind
from collisim.runner import (
    DUAL_MODE_PRESETS,
    PRESETS,
    ExperimentConfig,
    build_protocol,
    config_from_dict,
    config_to_dict,
    emit_csv,
    emit_report,
    load_config,
    preset,
    reproduce,
    run_experiment,
    sweep,
)


def small_config(**overrides):
    base = dict(
        topology="linear3",
        system_coupling="XX",
        ancilla_coupling="ZZ",
        omega=5.0,
        target="B",
        mode="repeated",
        dt=0.4,
        steps=6,
        ancilla_init="1",
    )
    base.update(overrides)
    return ExperimentConfig(**base)


class TestConfigParsing:
    def test_round_trip_through_dict(self):
        for name in PRESETS:
            cfg = preset(name)
            assert config_from_dict(config_to_dict(cfg)) == cfg

    def test_round_trip_through_yaml_file(self, tmp_path):
        cfg = small_config(tracked_pairs=["BC"], peak_min_height=0.5)
        path = tmp_path / "run.yaml"
        path.write_text(yaml.safe_dump(config_to_dict(cfg)), encoding="utf-8")
        assert load_config(path) == cfg

    def test_numeric_strings_are_coerced(self):
        doc = config_to_dict(small_config())
        doc["omega"] = "5"
        doc["steps"] = "6"
        cfg = config_from_dict(doc)
        assert cfg.omega == 5.0
        assert cfg.steps == 6

    def test_unknown_key(self):
        doc = config_to_dict(small_config())
        doc["coupling"] = "XX"
        with pytest.raises(ValueError, match="unknown config keys"):
            config_from_dict(doc)

    def test_missing_key(self):
        doc = config_to_dict(small_config())
        del doc["omega"]
        with pytest.raises(ValueError, match="missing config keys"):
            config_from_dict(doc)

    def test_non_mapping_document(self):
        with pytest.raises(ValueError, match="mapping"):
            config_from_dict(["omega", 5])

    def test_non_numeric_value(self):
        doc = config_to_dict(small_config())
        doc["dt"] = "soon"
        with pytest.raises(ValueError, match="dt"):
            config_from_dict(doc)

    def test_invalid_yaml_text(self, tmp_path):
        path = tmp_path / "broken.yaml"
        path.write_text("topology: [linear3\n", encoding="utf-8")
        with pytest.raises(ValueError, match="could not parse"):
            load_config(path)

    def test_missing_file_raises_oserror(self, tmp_path):
        with pytest.raises(OSError):
            load_config(tmp_path / "absent.yaml")


class TestBuildProtocol:
    def test_resolves_fields(self):
        protocol, pairs, min_height = build_protocol(small_config())
        assert protocol.spec.topology.n == 3
        assert protocol.spec.system_coupling is CouplingKind.XX
        assert protocol.spec.ancilla_coupling is CouplingKind.ZZ
        assert protocol.spec.target == 1
        assert protocol.mode is ProtocolMode.REPEATED_INTERACTION
        assert pairs == [(0, 1), (0, 2), (1, 2)]
        assert min_height == 0.9

    def test_target_accepts_letter_or_index(self):
        by_letter, _, _ = build_protocol(small_config(target="C"))
        by_index, _, _ = build_protocol(small_config(target=2))
        assert by_letter.spec.target == by_index.spec.target == 2

    def test_ancilla_kets(self):
        protocol, _, _ = build_protocol(small_config(ancilla_init="+i"))
        want = np.array([1.0, 1.0j]) / np.sqrt(2.0)
        assert np.allclose(protocol.ancilla_init, want)
        protocol, _, _ = build_protocol(small_config(ancilla_init=[0.6, 0.8]))
        assert np.allclose(protocol.ancilla_init, [0.6, 0.8])

    def test_network_bitstring(self):
        protocol, _, _ = build_protocol(small_config(network_init="010"))
        want = np.zeros(8)
        want[2] = 1.0
        assert np.allclose(protocol.network_init, want)

    def test_default_network_is_all_zeros(self):
        protocol, _, _ = build_protocol(small_config())
        assert protocol.network_init[0] == 1.0

    def test_tracked_pairs_accept_labels_and_indices(self):
        _, pairs, _ = build_protocol(small_config(tracked_pairs=["CB", [0, 1]]))
        assert pairs == [(1, 2), (0, 1)]

    def test_rejects_pair_outside_network(self):
        with pytest.raises(ValueError, match="outside the 3-qubit network"):
            build_protocol(small_config(tracked_pairs=["AD"]))

    def test_rejects_repeated_qubit_pair(self):
        with pytest.raises(ValueError, match="repeats"):
            build_protocol(small_config(tracked_pairs=["AA"]))

    def test_rejects_duplicate_pairs(self):
        with pytest.raises(ValueError, match="duplicates"):
            build_protocol(small_config(tracked_pairs=["AB", "BA"]))

    def test_rejects_bad_coupling(self):
        with pytest.raises(ValueError, match="system_coupling"):
            build_protocol(small_config(system_coupling="YY"))

    def test_rejects_bad_mode(self):
        with pytest.raises(ValueError, match="mode"):
            build_protocol(small_config(mode="markovian"))

    def test_rejects_bad_ket_name(self):
        with pytest.raises(ValueError, match="ancilla_init"):
            build_protocol(small_config(ancilla_init="-"))

    def test_rejects_bad_bitstring(self):
        with pytest.raises(ValueError, match="network_init"):
            build_protocol(small_config(network_init="01"))
        with pytest.raises(ValueError, match="network_init"):
            build_protocol(small_config(network_init="012"))

    def test_rejects_bad_target(self):
        with pytest.raises(ValueError, match="target"):
            build_protocol(small_config(target="AB"))

    def test_unnormalized_amplitudes_fail_at_run_time(self):
        with pytest.raises(ValueError, match="norm"):
            run_experiment(small_config(ancilla_init=[1.0, 1.0]))

    def test_custom_adjacency(self):
        ring4 = [[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0]]
        cfg = small_config(topology=ring4, target="D", steps=5, network_init="0000")
        result = run_experiment(cfg)
        assert result.table.shape == (6, 6)
        assert [p for p in result.pairs] == [
            (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
        ]


class TestPresets:
    def test_names(self):
        assert list(PRESETS) == ["fig2", "fig3a", "fig3b", "fig2_cm", "fig5", "fig6"]

    def test_unknown_name(self):
        with pytest.raises(ValueError, match="unknown preset"):
            preset("fig9")

    def test_dual_mode_presets_exist(self):
        for name in DUAL_MODE_PRESETS:
            assert name in PRESETS

    def test_preset_returns_fresh_config(self):
        a = preset("fig5")
        a.omega = 99.0
        assert preset("fig5").omega == 5.0


class TestRunExperiment:
    def test_middle_target_distributes_to_the_ends(self):
        result = run_experiment(preset("fig5"))
        assert result.table.shape == (81, 3)
        top = result.peaks[0]
        assert top.pair == (0, 2)
        assert top.n == 51
        assert abs(top.concurrence - 0.9986) < 5e-4
        assert top.best_target == "PhiTilde+"
        assert abs(top.fidelity - 0.9993) < 5e-4

    def test_peaks_sorted_by_height(self):
        result = run_experiment(preset("fig5"))
        heights = [p.concurrence for p in result.peaks]
        assert heights == sorted(heights, reverse=True)

    def test_deterministic(self):
        a = run_experiment(preset("fig2_cm"))
        b = run_experiment(preset("fig2_cm"))
        assert np.array_equal(a.table, b.table)

    def test_tracked_pairs_limit_the_table(self):
        result = run_experiment(small_config(tracked_pairs=["AC"], steps=8))
        assert result.pairs == [(0, 2)]
        assert result.table.shape == (9, 1)


class TestSweep:
    def test_single_point_matches_direct_run(self):
        base = preset("fig5")
        rows = sweep(base, "omega", [base.omega])
        assert len(rows) == 1
        assert rows[0].error is None
        direct = run_experiment(base)
        top = rows[0].top["AC"]
        assert top[0] == direct.peaks[0].n
        assert abs(top[1] - direct.peaks[0].concurrence) < 1e-12

    def test_preserves_value_order(self):
        rows = sweep(small_config(steps=5), "dt", [0.3, 0.1, 0.2])
        assert [r.value for r in rows] == [0.3, 0.1, 0.2]

    def test_bad_value_is_recorded_not_raised(self):
        rows = sweep(small_config(steps=5), "dt", [0.4, -1.0])
        assert rows[0].error is None
        assert isinstance(rows[1].error, ValueError)
        assert rows[1].top == {}

    def test_rejects_unknown_parameter(self):
        with pytest.raises(ValueError, match="sweep parameter"):
            sweep(small_config(), "steps", [5])

    def test_rejects_empty_values(self):
        with pytest.raises(ValueError, match="at least one"):
            sweep(small_config(), "omega", [])


class TestOutputs:
    def test_csv_layout(self, tmp_path):
        result = run_experiment(small_config(steps=4))
        path = tmp_path / "out.csv"
        emit_csv(result, path)
        text = path.read_text(encoding="utf-8")
        assert text.endswith("\n")
        lines = text.splitlines()
        assert lines[0] == "step,time,C_AB,C_AC,C_BC,ancilla_purity"
        assert len(lines) == 6
        first = lines[1].split(",")
        assert first[0] == "0"
        assert float(first[1]) == 0.0
        assert [float(c) for c in first[2:5]] == [0.0, 0.0, 0.0]
        assert float(first[5]) == 1.0

    def test_csv_values_match_table(self, tmp_path):
        result = run_experiment(small_config(steps=4))
        path = tmp_path / "out.csv"
        emit_csv(result, path)
        rows = [
            line.split(",") for line in path.read_text().splitlines()[1:]
        ]
        for row, cells in enumerate(rows):
            assert int(cells[0]) == row
            assert abs(float(cells[1]) - row * 0.4) < 1e-12
            for col in range(3):
                assert abs(float(cells[2 + col]) - result.table[row, col]) < 1e-11

    def test_csv_is_reproducible_byte_for_byte(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        emit_csv(run_experiment(preset("fig2_cm")), a)
        emit_csv(run_experiment(preset("fig2_cm")), b)
        assert a.read_bytes() == b.read_bytes()

    def test_report_lines(self, tmp_path):
        result = run_experiment(preset("fig5"))
        path = tmp_path / "peaks.txt"
        emit_report(result, path)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0].startswith("pair=AC n=51 concurrence=0.998")
        assert "target=PhiTilde+" in lines[0]

    def test_report_when_nothing_qualifies(self, tmp_path):
        result = run_experiment(small_config(steps=4, peak_min_height=0.99))
        path = tmp_path / "peaks.txt"
        emit_report(result, path)
        text = path.read_text(encoding="utf-8")
        assert "no peaks at or above min_height=0.99" in text

    def test_emit_to_missing_directory_raises_oserror(self, tmp_path):
        result = run_experiment(small_config(steps=4))
        with pytest.raises(OSError):
            emit_csv(result, tmp_path / "nope" / "out.csv")


class TestReproduce:
    def test_writes_both_files_and_checks_modes(self, tmp_path):
        summary = reproduce("fig5", tmp_path)
        assert (tmp_path / "fig5.csv").exists()
        assert (tmp_path / "fig5_peaks.txt").exists()
        assert summary["mode_delta"] is not None
        assert summary["mode_delta"] <= 1e-9

    def test_single_mode_preset_has_no_delta(self, tmp_path):
        summary = reproduce("fig2_cm", tmp_path)
        assert summary["mode_delta"] is None

    def test_creates_output_directory(self, tmp_path):
        out = tmp_path / "fresh" / "dir"
        reproduce("fig2_cm", out)
        assert (out / "fig2_cm.csv").exists()
