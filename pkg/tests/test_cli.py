"""
Tests for the CLI module.

This module tests argument parsing, configuration loading, output rendering and
every subcommand end to end through main(), including exit codes.
"""

import json
import logging
from unittest.mock import patch

import pytest

from src.cli import (
    EXIT_INVALID,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_UNSUPPORTED,
    EXIT_WORK_LIMIT,
    create_parser,
    main,
)
from src.codes.reference import REFERENCE_CASES
from src.codes.theory import distribution_diff
from src.codes.theory import theoretical_wd as real_theoretical_wd
from src.codes.types import TheoreticalWD
from src.errors import InvalidParameterError
from src.infrastructure.config import load_config, parse_modulus
from src.infrastructure.reports import render_comparison, write_output

CASES_BY_NAME = {case.name: case for case in REFERENCE_CASES}


def run(capsys, argv):
    """Run main() and return (exit code, stdout, stderr)."""
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCreateParser:
    """Test the create_parser function."""

    def test_parser_creation(self):
        """Test that parser is created successfully."""
        parser = create_parser()
        assert parser is not None
        assert 'weight distributions' in parser.description

    def test_wd_arguments(self):
        parser = create_parser()
        args = parser.parse_args(['wd', '--p', '3', '--m', '6', '--k', '1', '--code', 'c2'])
        assert (args.p, args.m, args.k, args.code) == (3, 6, 1, 'c2')
        assert args.source == 'theory'
        assert args.strategy == 'transform'
        assert args.format == 'json'

    def test_common_flags(self):
        parser = create_parser()
        args = parser.parse_args([
            'rank-distribution', '--p', '3', '--m', '6', '--k', '1',
            '--work-limit', '500', '--workers', '2', '--out', 'r.json', '-v'
        ])
        assert args.work_limit == 500
        assert args.workers == 2
        assert args.out == 'r.json'
        assert args.verbose is True

    def test_command_required(self):
        with pytest.raises(SystemExit):
            create_parser().parse_args([])

    def test_invalid_format_choice(self):
        with pytest.raises(SystemExit):
            create_parser().parse_args(['field', '--p', '3', '--m', '2', '--format', 'xml'])


class TestLoadConfig:
    """Test the load_config function."""

    @patch.dict('os.environ', {}, clear=True)
    def test_defaults(self):
        args = create_parser().parse_args(['wd', '--p', '3', '--m', '3', '--k', '1'])
        config = load_config(args)
        assert config.command == 'wd'
        assert config.family == 'C1'
        assert config.work_limit is None
        assert config.workers >= 1
        assert config.log_level == logging.WARNING
        assert config.cloud_logging is False

    @patch.dict('os.environ', {'CW_WORK_LIMIT': '1000', 'CW_WORKERS': '3',
                               'CW_LOG_LEVEL': 'debug', 'CW_CLOUD_LOGGING': 'true'}, clear=True)
    def test_load_config_from_env(self):
        args = create_parser().parse_args(['suite'])
        config = load_config(args)
        assert config.work_limit == 1000
        assert config.workers == 3
        assert config.log_level == logging.DEBUG
        assert config.cloud_logging is True

    @patch.dict('os.environ', {'CW_WORK_LIMIT': '1000', 'CW_WORKERS': '3'}, clear=True)
    def test_flags_override_env(self):
        args = create_parser().parse_args(['suite', '--work-limit', '7', '--workers', '1'])
        config = load_config(args)
        assert config.work_limit == 7
        assert config.workers == 1

    @patch.dict('os.environ', {}, clear=True)
    def test_verbose_lowers_threshold(self):
        args = create_parser().parse_args(['suite', '-v'])
        assert load_config(args).log_level == logging.INFO

    @pytest.mark.parametrize("env", [
        {'CW_WORKERS': 'many'},
        {'CW_WORKERS': '0'},
        {'CW_WORK_LIMIT': '-5'},
        {'CW_LOG_LEVEL': 'loud'},
    ])
    def test_invalid_environment(self, env):
        with patch.dict('os.environ', env, clear=True):
            with pytest.raises(InvalidParameterError):
                load_config(create_parser().parse_args(['suite']))

    def test_parse_modulus(self):
        assert parse_modulus('1,0,1') == (1, 0, 1)
        assert parse_modulus(None) is None
        with pytest.raises(InvalidParameterError):
            parse_modulus('1;0;1')


class TestFieldCommand:
    """Test the field subcommand."""

    def test_f9(self, capsys):
        code, out, _ = run(capsys, ['field', '--p', '3', '--m', '2'])
        assert code == EXIT_OK
        assert json.loads(out) == {"p": 3, "m": 2, "modulus": [1, 0, 1], "alpha": [1, 1]}

    def test_prime_field(self, capsys):
        code, out, _ = run(capsys, ['field', '--p', '3', '--m', '1'])
        assert code == EXIT_OK
        assert json.loads(out) == {"p": 3, "m": 1, "modulus": [0, 1], "alpha": [2]}

    def test_user_modulus(self, capsys):
        code, out, _ = run(capsys, ['field', '--p', '3', '--m', '2', '--modulus', '2,1,1'])
        assert code == EXIT_OK
        assert json.loads(out)["modulus"] == [2, 1, 1]

    @pytest.mark.parametrize("argv", [
        ['field', '--p', '4', '--m', '2'],
        ['field', '--p', '2', '--m', '3'],
        ['field', '--p', '3', '--m', '2', '--modulus', '0,1,1'],
        ['field', '--p', '3', '--m', '2', '--modulus', 'x+1'],
    ])
    def test_invalid_input(self, capsys, argv):
        code, out, err = run(capsys, argv)
        assert code == EXIT_INVALID
        assert out == ""
        assert "invalid input" in err


class TestClassifyCommands:
    """Test classify and rank-distribution."""

    def test_classify_f9(self, capsys):
        code, out, _ = run(capsys, ['classify', '--p', '3', '--m', '2', '--k', '1'])
        assert code == EXIT_OK
        profiles = json.loads(out)
        assert len(profiles) == 8
        assert profiles[0] == {"a_log": 0, "rank": 2, "eps": -1, "i": 0}

    def test_classify_work_limit(self, capsys):
        argv = ['classify', '--p', '3', '--m', '4', '--k', '1', '--work-limit', '10']
        code, _, err = run(capsys, argv)
        assert code == EXIT_WORK_LIMIT
        assert "work limit" in err

    @pytest.mark.parametrize("p,m,k,case", [
        (3, 3, 1, "ODD_S_ODD_M"),
        (3, 6, 1, "BOUNDARY"),
        (3, 6, 2, "ODD_S_EVEN_M"),
        (3, 6, 3, "BOUNDARY"),
    ])
    def test_rank_distribution(self, capsys, p, m, k, case):
        argv = ['rank-distribution', '--p', str(p), '--m', str(m), '--k', str(k),
                '--workers', '1']
        code, out, _ = run(capsys, argv)
        report = json.loads(out)
        assert code == EXIT_OK
        assert report["case"] == case
        assert report["match"] is True
        assert report["expected"] == report["empirical"]

    def test_rank_distribution_rejects_k(self, capsys):
        code, _, _ = run(capsys, ['rank-distribution', '--p', '3', '--m', '3', '--k', '3'])
        assert code == EXIT_INVALID

    def test_lemma3_is_the_primary_name(self, capsys):
        """lemma3 and its rank-distribution alias print the same report."""
        argv = ['--p', '3', '--m', '6', '--k', '1', '--workers', '1']
        code, primary, _ = run(capsys, ['lemma3'] + argv)
        _, alias, _ = run(capsys, ['rank-distribution'] + argv)
        assert code == EXIT_OK
        assert json.loads(primary)["match"] is True
        assert primary == alias


class TestWdCommand:
    """Test the wd subcommand."""

    def test_theory_json(self, capsys):
        code, out, _ = run(capsys, ['wd', '--p', '3', '--m', '6', '--k', '1', '--code', 'c1'])
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["n"] == 728 and data["dimension"] == 12
        assert {e["w"]: e["count"] for e in data["weights"]} == CASES_BY_NAME["c1-3-6-1"].counts
        assert data["formula"] == "c1-boundary"

    def test_theory_csv(self, capsys):
        argv = ['wd', '--p', '3', '--m', '3', '--k', '1', '--code', 'c2', '--format', 'csv']
        code, out, _ = run(capsys, argv)
        assert code == EXIT_OK
        assert out == "w,count\n0,1\n14,26\n18,26\n20,26\n26,2\n"

    def test_both_sources_agree(self, capsys):
        argv = ['wd', '--p', '3', '--m', '6', '--k', '3', '--code', 'c2', '--source', 'both',
                '--workers', '1']
        code, out, _ = run(capsys, argv)
        data = json.loads(out)
        assert code == EXIT_OK
        assert data["equal"] is True
        assert data["diff"] == []
        assert data["theory"]["weights"] == data["empirical"]["weights"]

    def test_both_sources_table(self, capsys):
        argv = ['wd', '--p', '3', '--m', '2', '--k', '1', '--code', 'c1', '--source', 'both',
                '--format', 'table', '--strategy', 'direct', '--workers', '1']
        code, out, _ = run(capsys, argv)
        assert code == EXIT_OK
        assert out.splitlines()[-1] == "equal: yes"

    def test_unsupported_case(self, capsys):
        code, out, err = run(capsys, ['wd', '--p', '3', '--m', '6', '--k', '2', '--code', 'c1'])
        assert code == EXIT_UNSUPPORTED
        assert out == ""
        assert "unsupported case" in err

    def test_odd_s_c1_enumerates(self, capsys):
        """Enumeration still works where no closed form is provided."""
        argv = ['wd', '--p', '3', '--m', '3', '--k', '1', '--code', 'c1',
                '--source', 'empirical', '--workers', '1']
        code, out, _ = run(capsys, argv)
        assert code == EXIT_OK
        assert sum(e["count"] for e in json.loads(out)["weights"]) == 729

    def test_work_limit_flag(self, capsys):
        argv = ['wd', '--p', '3', '--m', '4', '--k', '1', '--code', 'c1',
                '--source', 'empirical', '--work-limit', '10']
        code, out, err = run(capsys, argv)
        assert code == EXIT_WORK_LIMIT
        assert out == ""
        assert "work limit exceeded" in err

    @patch.dict('os.environ', {'CW_WORK_LIMIT': '10'})
    def test_work_limit_env(self, capsys):
        argv = ['wd', '--p', '3', '--m', '4', '--k', '1', '--code', 'c2', '--source', 'empirical']
        code, _, _ = run(capsys, argv)
        assert code == EXIT_WORK_LIMIT

    def test_workers_give_identical_output(self, capsys):
        base = ['wd', '--p', '3', '--m', '6', '--k', '2', '--code', 'c2', '--source', 'empirical']
        _, serial, _ = run(capsys, base + ['--workers', '1'])
        _, parallel, _ = run(capsys, base + ['--workers', '2'])
        assert serial == parallel

    def test_out_file_matches_stdout(self, capsys, tmp_path):
        argv = ['wd', '--p', '3', '--m', '6', '--k', '2', '--code', 'c2']
        _, printed, _ = run(capsys, argv)
        target = tmp_path / "wd.json"
        code, out, _ = run(capsys, argv + ['--out', str(target)])
        assert code == EXIT_OK
        assert out == ""
        assert target.read_text(encoding="utf-8") == printed

    def test_unwritable_out_path(self, capsys, tmp_path):
        target = tmp_path / "missing" / "wd.json"
        argv = ['wd', '--p', '3', '--m', '3', '--k', '1', '--code', 'c2', '--out', str(target)]
        code, out, err = run(capsys, argv)
        assert code == EXIT_INVALID
        assert out == ""
        assert "cannot write output" in err
        assert "Traceback" not in err


def off_by_one_theory(p, m, k, family):
    """A closed form with one extra codeword at the largest weight."""
    wd = real_theoretical_wd(p, m, k, family)
    counts = dict(wd.counts)
    counts[max(counts)] += 1
    return TheoreticalWD(spec=wd.spec, counts=counts, case=wd.case, formula=wd.formula)


class TestSuiteCommand:
    """Test the suite subcommand."""

    def test_subset_passes(self, capsys):
        cases = (CASES_BY_NAME["c2-3-6-2"], CASES_BY_NAME["c2-3-6-3"])
        with patch('src.cli.REFERENCE_CASES', cases):
            code, out, _ = run(capsys, ['suite', '--workers', '1'])
        report = json.loads(out)
        assert code == EXIT_OK
        assert report["all_passed"] is True
        assert report["passed"] == report["total"] == 2
        assert [row["minimum_distance"] for row in report["cases"]] == [468, 476]

    def test_table_format(self, capsys):
        with patch('src.cli.REFERENCE_CASES', (CASES_BY_NAME["c2-3-6-3"],)):
            code, out, _ = run(capsys, ['suite', '--workers', '1', '--format', 'table'])
        assert code == EXIT_OK
        assert out.splitlines()[-1] == "1/1 passed"

    def test_table_columns_align(self, capsys):
        cases = (CASES_BY_NAME["c2-3-6-2"], CASES_BY_NAME["c2-3-6-3"])
        with patch('src.cli.REFERENCE_CASES', cases):
            _, out, _ = run(capsys, ['suite', '--workers', '1', '--format', 'table'])
        lines = out.splitlines()
        assert lines[0].startswith("case      weights")
        assert len({len(line) for line in lines[:-1]}) == 1
        assert lines[1].endswith("pass")

    def test_injected_fault_is_reported(self, capsys):
        """Perturbing a single closed-form frequency fails the suite with the differing weight."""
        with patch('src.cli.REFERENCE_CASES', (CASES_BY_NAME["c2-3-6-3"],)), \
                patch('src.cli.theoretical_wd', side_effect=off_by_one_theory):
            code, out, err = run(capsys, ['suite', '--workers', '1'])
        report = json.loads(out)
        assert code == EXIT_MISMATCH
        assert report["all_passed"] is False
        assert report["cases"][0]["first_difference"] == [728, 3, 2]
        assert "first difference at weight 728: theory 3, empirical 2" in err

    @pytest.mark.slow
    def test_full_suite(self, capsys):
        code, out, _ = run(capsys, ['suite', '--workers', '1'])
        report = json.loads(out)
        assert code == EXIT_OK
        assert report["total"] == len(REFERENCE_CASES)
        assert all(row["passed"] for row in report["cases"])

    @pytest.mark.slow
    def test_strategies_give_identical_output(self, capsys):
        _, transform, _ = run(capsys, ['suite', '--strategy', 'transform'])
        _, direct, _ = run(capsys, ['suite', '--strategy', 'direct'])
        assert transform == direct


class TestWorkerDeterminism:
    """Output is byte-identical for any worker count."""

    @pytest.mark.parametrize("argv", [
        ['field', '--p', '3', '--m', '4'],
        ['classify', '--p', '3', '--m', '4', '--k', '1'],
        ['lemma3', '--p', '3', '--m', '6', '--k', '2'],
        ['wd', '--p', '3', '--m', '4', '--k', '1', '--code', 'c1', '--source', 'both'],
        ['wd', '--p', '5', '--m', '3', '--k', '1', '--code', 'c1', '--source', 'empirical',
         '--strategy', 'direct'],
        ['wd', '--p', '3', '--m', '6', '--k', '3', '--code', 'c2', '--source', 'both',
         '--format', 'table'],
    ], ids=lambda argv: "-".join(argv[:1] + argv[2:7:2]))
    def test_commands(self, capsys, argv):
        code, serial, _ = run(capsys, argv + ['--workers', '1'])
        _, parallel, _ = run(capsys, argv + ['--workers', '3'])
        assert code == EXIT_OK
        assert serial == parallel

    def test_suite(self, capsys):
        cases = (CASES_BY_NAME["c2-3-6-2"], CASES_BY_NAME["c2-3-6-3"])
        with patch('src.cli.REFERENCE_CASES', cases):
            code, serial, _ = run(capsys, ['suite', '--workers', '1'])
            _, parallel, _ = run(capsys, ['suite', '--workers', '4'])
        assert code == EXIT_OK
        assert serial == parallel


class TestReports:
    """Test rendering and writing of results."""

    def test_comparison_csv(self):
        theory = real_theoretical_wd(3, 3, 1, "C2")
        text = render_comparison(theory, theory, [], "csv")
        assert text.splitlines()[0] == "w,theory,empirical"
        assert text.splitlines()[1] == "0,1,1"

    def test_comparison_table_marks_differences(self):
        theory = real_theoretical_wd(3, 3, 1, "C2")
        other = off_by_one_theory(3, 3, 1, "C2")
        diff = distribution_diff(theory, other)
        lines = render_comparison(theory, other, diff, "table").splitlines()
        assert lines[-1] == "equal: no"
        assert any(line.endswith("*") for line in lines)

    def test_unknown_format(self):
        theory = real_theoretical_wd(3, 3, 1, "C2")
        with pytest.raises(ValueError):
            render_comparison(theory, theory, [], "xml")

    def test_write_output_file(self, tmp_path, caplog):
        target = tmp_path / "out.csv"
        with caplog.at_level(logging.INFO, logger="cyclic_weights.reports"):
            write_output("w,count\n0,1\n", str(target))
        assert target.read_text(encoding="utf-8") == "w,count\n0,1\n"
        assert "Results saved to" in caplog.text

    def test_write_output_stdout(self, capsys):
        write_output("hello\n")
        assert capsys.readouterr().out == "hello\n"
