import json
import logging

from django.http import JsonResponse
from django.shortcuts import get_object_or_404
from django.test.utils import override_settings
from django.views.decorators.csrf import csrf_exempt
from django.views.decorators.http import require_http_methods

from ci_analysis.locator import locate_cartesian_cis, locate_complex_cis
from flux_quadrature.reports import table_report
from geophase.exceptions import GeoPhaseError, InputError, ModelParseError
from model_core.hamiltonians import BerryModel, CartesianCoupling, ComplexCoupling
from model_core.serializers import model_from_dict
from model_core.states import REPRESENTATIONS
from .documents import ci_points_document, flux_tables_document
from .models import VerificationRun

logger = logging.getLogger(__name__)


def _float_param(request, name, default):
    value = request.GET.get(name)
    if value is None:
        return default
    try:
        return float(value)
    except ValueError:
        raise InputError(f"Query parameter {name} must be a number, got {value!r}")


@csrf_exempt
@require_http_methods(["POST"])
def analyze_ci(request):
    try:
        model = model_from_dict(json.loads(request.body))
        if isinstance(model, CartesianCoupling):
            region = request.GET.get('region', '-5,5,-5,5').split(',')
            if len(region) != 4:
                raise InputError("region needs four comma-separated numbers")
            xmin, xmax, ymin, ymax = (float(v) for v in region)
            grid = request.GET.get('grid')
            cis = locate_cartesian_cis(model, ((xmin, xmax), (ymin, ymax)), grid=int(grid) if grid else None)
        elif isinstance(model, ComplexCoupling):
            cis = locate_complex_cis(model, q_max=_float_param(request, 'q_max', None))
        else:
            raise InputError("CI analysis needs a cartesian or complex coupling model")
        return JsonResponse({'cis': ci_points_document(cis)})
    except json.JSONDecodeError:
        return JsonResponse({'error': 'Invalid JSON data'}, status=400)
    except ValueError as e:
        return JsonResponse({'error': str(e)}, status=400)
    except (ModelParseError, InputError) as e:
        return JsonResponse({'error': str(e)}, status=400)
    except GeoPhaseError as e:
        logger.error(f"CI analysis failed: {e}")
        return JsonResponse({'error': str(e)}, status=500)


@require_http_methods(["GET"])
def flux_table(request, representation):
    if representation not in REPRESENTATIONS:
        return JsonResponse({'error': f'Unknown representation {representation}'}, status=404)
    try:
        model = BerryModel(alpha=_float_param(request, 'alpha', 1.0), beta=_float_param(request, 'beta', 1.0))
        contour = (_float_param(request, 'q_max', 1.0), _float_param(request, 'z', 1.0))
        overrides = {}
        if 'tolerance' in request.GET:
            overrides['GEOPHASE_FLUX_TOLERANCE'] = _float_param(request, 'tolerance', None)
        with override_settings(**overrides):
            table = table_report(model, representation, contour)
        return JsonResponse(flux_tables_document(model, [table]))
    except InputError as e:
        return JsonResponse({'error': str(e)}, status=400)
    except GeoPhaseError as e:
        logger.error(f"Flux table for {representation} failed: {e}")
        return JsonResponse({'error': str(e)}, status=500)


@require_http_methods(["GET"])
def run_detail(request, run_id):
    run = get_object_or_404(VerificationRun, id=run_id)
    return JsonResponse({
        'id': run.id,
        'groups': run.groups.split(',') if run.groups else [],
        'status': run.status,
        'total': run.total_checks,
        'passed': run.passed_checks,
        'failed': run.failed_checks,
        'elapsed_time': run.elapsed_time,
        'started_at': run.started_at.isoformat(),
        'finished_at': run.finished_at.isoformat() if run.finished_at else None,
        'checks': [
            {
                'group': check.group, 'name': check.name, 'expected': check.expected,
                'actual': check.actual, 'tolerance': check.tolerance,
                'status': check.status, 'message': check.message,
            }
            for check in run.checks.all()
        ],
    })
