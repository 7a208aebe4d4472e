import json
import math
import os
import tempfile
from io import StringIO
from unittest import mock

import numpy as np
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import Client, SimpleTestCase, TestCase
from django.urls import reverse

from ci_analysis.ci_points import MINUS, PLUS
from effective_hamiltonian.serializers import complex_to_json
from geophase.exceptions import InputError, ModelParseError
from model_core.hamiltonians import BerryModel, example_one
from model_core.serializers import model_to_dict
from .checks import CHECK_GROUPS, FAIL, PASS, QUARTIC_SIGNS, CheckOutcome, VerificationReport
from .config import RunConfig, build_run_config
from .formatting import dump_csv, dump_text, json_number, pi_multiple
from .models import CheckResult, VerificationRun
from .runner import run
from .serializers import parse_ci_points, parse_output

QUARTIC_DOC = {'kind': 'complex', 'K': 1.0, 'mu': 0.3, 'lambda': 0.003}


class FileFixtureMixin:
    """Writes JSON documents into a per-test temporary directory"""

    def setUp(self):
        super().setUp()
        self._tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self._tmp.cleanup)

    def write_json(self, name, document):
        path = os.path.join(self._tmp.name, name)
        with open(path, 'w', encoding='utf-8') as handle:
            json.dump(document, handle)
        return path

    def path(self, name):
        return os.path.join(self._tmp.name, name)


def run_command(name, *args, **options):
    out = StringIO()
    call_command(name, *args, stdout=out, stderr=StringIO(), **options)
    return out.getvalue()


class FormattingTests(SimpleTestCase):

    def test_pi_multiples(self):
        self.assertEqual(pi_multiple(3 * math.pi), '3·π')
        self.assertEqual(pi_multiple(-math.pi), '-1·π')
        self.assertEqual(pi_multiple(0.0), '0·π')
        self.assertIsNone(pi_multiple(3.2))
        self.assertIsNone(pi_multiple(math.pi + 1e-6))
        self.assertIsNone(pi_multiple(float('nan')))

    def test_json_number_is_stable(self):
        self.assertEqual(json_number(1.0 / 3.0), json_number(json_number(1.0 / 3.0)))
        self.assertEqual(str(json_number(-0.0)), '0.0')

    def test_csv_cells(self):
        text = dump_csv(('a', 'b', 'c', 'd'), [(True, 3, 0.5, None)])
        self.assertEqual(text, 'a,b,c,d\ntrue,3,5.000000000000e-01,\n')

    def test_text_alignment(self):
        lines = dump_text(('name', 'n'), [('x', 10), ('longer', 2)]).splitlines()
        self.assertEqual(len({len(line) for line in lines}), 1)


class RunConfigTests(FileFixtureMixin, SimpleTestCase):

    def test_command_line_wins_over_file(self):
        path = self.write_json('run.json', {'subcommand': 'analyze-ci', 'loop_samples': 512, 'format': 'csv'})
        config = build_run_config('analyze-ci', {'config': path, 'loop_samples': 4096})
        self.assertEqual(config.loop_samples, 4096)
        self.assertEqual(config.format, 'csv')
        self.assertEqual(config.settings_overrides(), {'GEOPHASE_LOOP_SAMPLES': 4096})

    def test_default_format_per_command(self):
        self.assertEqual(build_run_config('flux-table', {}, 'text').format, 'text')

    def test_unknown_keys_rejected(self):
        path = self.write_json('run.json', {'loop_samples': 512, 'verbose': True})
        with self.assertRaises(ModelParseError):
            build_run_config('analyze-ci', {'config': path})

    def test_short_b_sequence_rejected(self):
        path = self.write_json('run.json', {'b_sequence': [0.1, 0.01, 0.001]})
        with self.assertRaises(ModelParseError):
            build_run_config('flux-table', {'config': path})

    def test_subcommand_mismatch(self):
        path = self.write_json('run.json', {'subcommand': 'dynamics'})
        with self.assertRaises(InputError):
            build_run_config('berry3d', {'config': path})

    def test_unknown_subcommand(self):
        with self.assertRaises(InputError):
            RunConfig(subcommand='plot')


class VerificationReportTests(SimpleTestCase):

    def test_first_failure_sets_status(self):
        report = VerificationReport(groups=['g'])
        report.add(CheckOutcome('a', 'g', '1', '1', None, PASS))
        report.add(CheckOutcome('b', 'g', '1', '2', None, FAIL))
        report.add(CheckOutcome('c', 'g', '', '', None, 'ERROR'))
        self.assertEqual(report.status, FAIL)
        self.assertEqual((report.total, report.passed_count), (3, 1))
        self.assertEqual([o.name for o in report.failing()], ['b', 'c'])


class AnalyzeCiCommandTests(FileFixtureMixin, SimpleTestCase):

    def test_quartic_model(self):
        path = self.write_json('quartic.json', QUARTIC_DOC)
        text = run_command('analyze_ci', model=path)
        cis = parse_ci_points(text)
        self.assertEqual(len(cis), 10)
        self.assertEqual([ci.sign for ci in cis], QUARTIC_SIGNS)
        self.assertAlmostEqual(cis[1].q, 3.95, delta=0.01)

    def test_output_is_deterministic(self):
        path = self.write_json('quartic.json', QUARTIC_DOC)
        self.assertEqual(run_command('analyze_ci', model=path), run_command('analyze_ci', model=path))

    def test_cartesian_csv(self):
        path = self.write_json('one.json', model_to_dict(example_one()))
        lines = run_command('analyze_ci', model=path, region=[-2.0, 2.0, -2.0, 2.0], format='csv').splitlines()
        self.assertEqual(lines[0], 'x,y,q,phi,kind,sign,residual')
        self.assertEqual([line.split(',')[5] for line in lines[1:]], [MINUS, PLUS])

    def test_output_file(self):
        path = self.write_json('quartic.json', QUARTIC_DOC)
        target = self.path('cis.json')
        self.assertEqual(run_command('analyze_ci', model=path, output=target), '')
        with open(target, encoding='utf-8') as handle:
            self.assertEqual(len(json.load(handle)), 10)

    def test_missing_model_file(self):
        with self.assertRaises(CommandError) as ctx:
            run_command('analyze_ci', model=self.path('absent.json'))
        self.assertEqual(ctx.exception.returncode, 3)

    def test_berry_model_rejected(self):
        path = self.write_json('berry.json', model_to_dict(BerryModel()))
        with self.assertRaises(CommandError) as ctx:
            run_command('analyze_ci', model=path)
        self.assertEqual(ctx.exception.returncode, 2)


class TraceLoopCommandTests(FileFixtureMixin, SimpleTestCase):

    def test_quartic_loop(self):
        path = self.write_json('quartic.json', QUARTIC_DOC)
        document = parse_output('trace-loop', run_command(
            'trace_loop', model=path, center=[0.0, 0.0], radius=2.0, format='json'))
        self.assertEqual(document['winding'], -1)
        self.assertEqual(document['predicted_winding'], -1)
        self.assertEqual(document['total_phase_symbolic'], '-1·π')

    def test_csv_columns(self):
        path = self.write_json('quartic.json', QUARTIC_DOC)
        lines = run_command('trace_loop', model=path, center=[0.0, 0.0], radius=2.0).splitlines()
        self.assertEqual(lines[0], 'alpha,theta_unwrapped,partial_phase')
        self.assertGreater(len(lines), 100)

    def test_berry_overlap_phase(self):
        path = self.write_json('berry.json', model_to_dict(BerryModel(b=1e-3)))
        document = parse_output('trace-loop-overlap', run_command(
            'trace_loop', model=path, center=[0.0, 0.0, 1.0], radius=1.0, format='json'))
        self.assertEqual(document['element'], '1')
        self.assertEqual(len(document['phase']), 2)

    def test_coupling_model_needs_planar_center(self):
        path = self.write_json('quartic.json', QUARTIC_DOC)
        with self.assertRaises(CommandError) as ctx:
            run_command('trace_loop', model=path, center=[0.0, 0.0, 1.0], radius=2.0)
        self.assertEqual(ctx.exception.returncode, 2)


class FieldsCommandTests(FileFixtureMixin, SimpleTestCase):

    def test_nact_records(self):
        path = self.write_json('berry.json', model_to_dict(BerryModel(b=0.5)))
        records = parse_output('fields', run_command('fields', '--point', '1', '0', '1', model=path))
        self.assertEqual(len(records), 4)
        self.assertEqual({r['field'] for r in records}, {'nact'})

    def test_csv_has_regular_and_seam_rows(self):
        path = self.write_json('berry.json', model_to_dict(BerryModel(b=0.5)))
        lines = run_command(
            'fields', '--point', '1', '0', '1', '--point', '0', '1', '-1', model=path, field='magnetic', format='csv',
        ).splitlines()
        self.assertEqual(len(lines), 1 + 2 * 4 * 2)
        self.assertEqual(len(lines[0].split(',')), 14)


class Berry3DCommandTests(SimpleTestCase):

    def test_equator_closed_form(self):
        document = parse_output('berry3d', run_command('berry3d', theta_cap=[math.pi / 2], format='json'))
        theta, lower, upper = document['rows'][0]
        self.assertAlmostEqual(lower, -math.pi, places=9)
        self.assertAlmostEqual(upper, math.pi, places=9)

    def test_quadrature_matches_closed_form(self):
        closed = parse_output('berry3d', run_command('berry3d', caps=4, format='json'))
        numeric = parse_output('berry3d', run_command('berry3d', caps=4, method='quadrature', format='json'))
        np.testing.assert_allclose(numeric['rows'], closed['rows'], atol=1e-8)

    def test_default_caps_end_at_pole(self):
        lines = run_command('berry3d', format='csv').splitlines()
        self.assertEqual(len(lines), 21)
        self.assertAlmostEqual(float(lines[-1].split(',')[0]), math.pi, places=9)


class DynamicsCommandTests(SimpleTestCase):

    def test_ode_matches_exact(self):
        ode = parse_output('dynamics', run_command('dynamics', G=10.0, omega=1.0, samples=16, format='json'))
        exact = parse_output('dynamics', run_command(
            'dynamics', G=10.0, omega=1.0, samples=16, method='exact', format='json'))
        np.testing.assert_allclose(ode['rows'], exact['rows'], atol=1e-8)

    def test_csv_rows(self):
        lines = run_command('dynamics', G=100.0, omega=1.0, samples=8, method='exact').splitlines()
        self.assertEqual(lines[0], 't,re_chi1,im_chi1,re_chi2,im_chi2,norm')
        self.assertEqual(len(lines), 10)
        for line in lines[1:]:
            self.assertAlmostEqual(float(line.split(',')[-1]), 1.0, places=9)

    def test_topological_phase(self):
        document = parse_output('dynamics', run_command(
            'dynamics', G=1000.0, omega=1.0, samples=4, method='adiabatic', phase=True, format='json'))
        self.assertAlmostEqual(document['geometric_phase'], -math.pi, delta=0.01)

    def test_phase_follows_explicit_amplitudes(self):
        document = parse_output('dynamics', run_command(
            'dynamics', G=1000.0, omega=1.0, chi0=[0.0, 0.0, 1.0, 0.0], samples=4,
            method='exact', phase=True, format='json'))
        self.assertAlmostEqual(document['geometric_phase'], math.pi, delta=0.01)

        half = math.sqrt(0.5)
        with self.assertRaises(CommandError) as ctx:
            run_command('dynamics', G=1000.0, omega=1.0, chi0=[half, 0.0, half, 0.0], samples=4,
                        method='exact', phase=True)
        self.assertEqual(ctx.exception.returncode, 1)

    def test_static_doublet_needs_end_time(self):
        with self.assertRaises(CommandError) as ctx:
            run_command('dynamics', G=1.0, omega=0.0)
        self.assertEqual(ctx.exception.returncode, 2)


class EffHCommandTests(FileFixtureMixin, SimpleTestCase):

    def test_pointwise_first_order(self):
        F = np.zeros((3, 2, 2))
        F[2] = np.diag([1.0, -1.0])
        path = self.write_json('effh.json', {
            'C1': 2.0, 'F': F.tolist(), 'op1': complex_to_json(np.array([np.eye(2)] * 3)),
        })
        document = parse_output('effh', run_command('effh', model=path, format='json'))
        self.assertEqual(document['dimension'], 2)
        np.testing.assert_allclose(np.array(document['matrix'])[..., 0], np.diag([2.0, -2.0]))

    def test_rejects_unknown_keys(self):
        path = self.write_json('effh.json', {'F': np.zeros((3, 2, 2)).tolist(), 'C3': 1.0})
        with self.assertRaises(CommandError) as ctx:
            run_command('effh', model=path)
        self.assertEqual(ctx.exception.returncode, 3)


class FluxTableCommandTests(SimpleTestCase):

    def test_adiabatic_table_passes(self):
        document = parse_output('flux-table', run_command('flux_table', representation='adiabatic', format='json'))
        self.assertTrue(document['passed'])
        self.assertEqual(len(document['tables']), 1)

    def test_text_verdict(self):
        text = run_command('flux_table', representation='circulating')
        self.assertTrue(text.endswith('PASS\n'))


class VerifyPaperCommandTests(TestCase):

    def test_roots_group_recorded(self):
        run_command('verify_paper', group=['roots'], record=True)
        run = VerificationRun.objects.get()
        self.assertEqual(run.status, 'PASS')
        self.assertEqual(run.checks.count(), run.total_checks)
        self.assertIsNotNone(run.finished_at)
        self.assertIn('checks passed: PASS', run.report)

    def test_json_report(self):
        document = parse_output('verify-paper', run_command('verify_paper', group=['berry3d'], format='json'))
        self.assertEqual(document['status'], 'PASS')
        self.assertEqual(document['total'], 40)
        self.assertFalse(VerificationRun.objects.exists())

    def test_failure_exit_status(self):
        failing = {'roots': lambda group: [CheckOutcome('forced', group, '1', '2', None, FAIL)]}
        with mock.patch.dict(CHECK_GROUPS, failing):
            with self.assertRaises(CommandError) as ctx:
                run_command('verify_paper', group=['roots'], record=True)
        self.assertEqual(ctx.exception.returncode, 1)
        run = VerificationRun.objects.get()
        self.assertEqual(run.status, 'FAIL')
        self.assertEqual(CheckResult.objects.get().name, 'forced')

    def test_run_detail_view(self):
        run_command('verify_paper', group=['roots'], record=True)
        run = VerificationRun.objects.get()
        response = Client().get(reverse('cli_runner:run_detail', args=[run.pk]))
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.json()['passed'], run.passed_checks)
        self.assertEqual(Client().get(reverse('cli_runner:run_detail', args=[run.pk + 1])).status_code, 404)


class RunnerTests(FileFixtureMixin, SimpleTestCase):

    def test_unknown_or_missing_subcommand(self):
        with mock.patch('sys.stderr', new_callable=StringIO):
            self.assertEqual(run([]), 2)
            self.assertEqual(run(['plot']), 2)

    def test_exit_codes(self):
        with mock.patch('sys.stderr', new_callable=StringIO), mock.patch('sys.stdout', new_callable=StringIO):
            self.assertEqual(run(['analyze-ci', '--model', self.path('absent.json')]), 3)
            self.assertEqual(run(['analyze-ci', '--no-such-option']), 2)

    def test_success(self):
        path = self.write_json('quartic.json', QUARTIC_DOC)
        target = self.path('out.csv')
        self.assertEqual(run(['analyze-ci', '--model', path, '--format', 'csv', '--output', target]), 0)
        with open(target, encoding='utf-8') as handle:
            self.assertEqual(len(handle.read().splitlines()), 11)


class ApiViewTests(SimpleTestCase):

    def setUp(self):
        self.client = Client()

    def test_analyze_ci(self):
        response = self.client.post(reverse('cli_runner:analyze_ci'), data=json.dumps(QUARTIC_DOC),
                                    content_type='application/json')
        self.assertEqual(response.status_code, 200)
        self.assertEqual(len(response.json()['cis']), 10)

    def test_analyze_ci_bad_input(self):
        url = reverse('cli_runner:analyze_ci')
        self.assertEqual(self.client.post(url, data='{', content_type='application/json').status_code, 400)
        response = self.client.post(url, data=json.dumps({'kind': 'tensor'}), content_type='application/json')
        self.assertEqual(response.status_code, 400)
        self.assertIn('error', response.json())
        self.assertEqual(self.client.get(url).status_code, 405)

    def test_unknown_representation(self):
        response = self.client.get(reverse('cli_runner:flux_table', args=['diabatic']))
        self.assertEqual(response.status_code, 404)

    def test_flux_table_bad_parameter(self):
        response = self.client.get(reverse('cli_runner:flux_table', args=['adiabatic']) + '?z=high')
        self.assertEqual(response.status_code, 400)
