import json
import math

from django import forms

from .exceptions import ConfigError

CHECK_CHOICES = ['oracle', 'marginals', 'continuity', 'deltaprime', 'stationary', 'separability2d']
DEFAULT_P_WINDOW = [-4.0 * math.pi, 4.0 * math.pi]


def _pair(value, label):
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise forms.ValidationError(f"{label} must be a [low, high] pair")
    try:
        low, high = float(value[0]), float(value[1])
    except (TypeError, ValueError):
        raise forms.ValidationError(f"{label} must hold numbers")
    if not (math.isfinite(low) and math.isfinite(high)) or not low < high:
        raise forms.ValidationError(f"{label} needs finite low < high, got {value}")
    return [low, high]


def _vector(value, label):
    values = value if isinstance(value, (list, tuple)) else [value]
    try:
        values = [float(v) for v in values]
    except (TypeError, ValueError):
        raise forms.ValidationError(f"{label} must be a number or a list of numbers")
    if not values or not all(math.isfinite(v) for v in values):
        raise forms.ValidationError(f"{label} must be finite")
    return values


class ShapeForm(forms.Form):
    """Billiard shape: interval or box by corners, polygon by counter-clockwise vertices"""
    KIND_CHOICES = [
        ('interval', 'Interval'),
        ('box', 'Box'),
        ('polygon', 'Convex polygon'),
    ]

    kind = forms.ChoiceField(choices=KIND_CHOICES, initial='interval')
    lo = forms.JSONField(required=False)
    hi = forms.JSONField(required=False)
    vertices = forms.JSONField(required=False)

    def clean(self):
        cleaned = super().clean()
        kind = cleaned.get('kind')
        if kind == 'polygon':
            vertices = cleaned.get('vertices')
            if not isinstance(vertices, list) or len(vertices) < 3:
                raise forms.ValidationError("a polygon needs at least three [x, y] vertices")
            cleaned['vertices'] = [_pair_point(v) for v in vertices]
        elif kind in ('interval', 'box'):
            lo = -1.0 if cleaned.get('lo') is None else cleaned['lo']
            hi = 1.0 if cleaned.get('hi') is None else cleaned['hi']
            cleaned['lo'] = _vector(lo, 'lo')
            cleaned['hi'] = _vector(hi, 'hi')
            if len(cleaned['lo']) != len(cleaned['hi']):
                raise forms.ValidationError("lo and hi need the same length")
            if kind == 'interval' and len(cleaned['lo']) != 1:
                raise forms.ValidationError("an interval has one lo and one hi")
        return cleaned


def _pair_point(value):
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise forms.ValidationError(f"vertex {value} is not an [x, y] pair")
    return _vector(value, 'vertex')


class StateForm(forms.Form):
    """Explicit coefficients on listed modes, or a Gaussian packet projected on them"""
    KIND_CHOICES = [
        ('coefficients', 'Explicit coefficients'),
        ('gaussian', 'Projected Gaussian packet'),
    ]

    kind = forms.ChoiceField(choices=KIND_CHOICES)
    modes = forms.JSONField()
    coeffs = forms.JSONField(required=False)
    a = forms.FloatField(required=False)
    p0 = forms.JSONField(required=False)
    normalize = forms.BooleanField(required=False)

    def clean_modes(self):
        modes = self.cleaned_data.get('modes')
        if not isinstance(modes, list) or not modes:
            raise forms.ValidationError("modes must be a non-empty list")
        rows = [m if isinstance(m, list) else [m] for m in modes]
        if len({len(r) for r in rows}) != 1:
            raise forms.ValidationError("every mode needs the same number of indices")
        if not all(isinstance(n, int) and not isinstance(n, bool) and n >= 1 for r in rows for n in r):
            raise forms.ValidationError("mode indices are integers starting at 1")
        if len({tuple(r) for r in rows}) != len(rows):
            raise forms.ValidationError("mode indices must be distinct")
        return rows

    def clean(self):
        cleaned = super().clean()
        kind, modes = cleaned.get('kind'), cleaned.get('modes')
        if kind is None or modes is None:
            return cleaned
        if kind == 'coefficients':
            coeffs = cleaned.get('coeffs')
            if not isinstance(coeffs, list) or len(coeffs) != len(modes):
                raise forms.ValidationError("coeffs needs one entry per mode")
            cleaned['coeffs'] = [_complex(c) for c in coeffs]
        else:
            a = cleaned.get('a')
            if a is None or not a > 0 or not math.isfinite(a):
                raise forms.ValidationError("a gaussian state needs a positive width a")
            cleaned['p0'] = _vector(0.0 if cleaned.get('p0') is None else cleaned['p0'], 'p0')
        return cleaned


def _complex(value):
    """A number or an [re, im] pair"""
    if isinstance(value, (list, tuple)) and len(value) == 2:
        re, im = _vector(value, 'coefficient')
        return [re, im]
    return [_vector(value, 'coefficient')[0], 0.0]


class GridForm(forms.Form):
    """Tensor-product (x, p) grid; ranges may be one pair for every axis or one pair per axis"""
    x_range = forms.JSONField(required=False)
    p_range = forms.JSONField(required=False)
    nx = forms.IntegerField(min_value=16)
    np = forms.IntegerField(min_value=16)

    def _ranges(self, name, default):
        value = self.cleaned_data.get(name)
        if value is None:
            return [default]
        if isinstance(value, list) and value and all(isinstance(v, list) for v in value):
            return [_pair(v, name) for v in value]
        return [_pair(value, name)]

    def clean(self):
        cleaned = super().clean()
        cleaned['x_range'] = self._ranges('x_range', None)
        cleaned['p_range'] = self._ranges('p_range', list(DEFAULT_P_WINDOW))
        return cleaned


class RunConfigForm(forms.Form):
    """Top-level scalars of a run file"""
    mass = forms.FloatField(initial=1.0, required=False)
    times = forms.JSONField(required=False)
    out = forms.CharField(required=False)
    checks = forms.JSONField(required=False)
    tolerances = forms.JSONField(required=False)
    resolution = forms.IntegerField(min_value=4, required=False)
    seed = forms.IntegerField(min_value=0, required=False)

    def clean_mass(self):
        mass = self.cleaned_data.get('mass')
        if mass is None:
            return 1.0
        if not mass > 0 or not math.isfinite(mass):
            raise forms.ValidationError("mass must be positive")
        return mass

    def clean_times(self):
        times = self.cleaned_data.get('times')
        if times is None:
            return [0.0]
        return _vector(times, 'times')

    def clean_checks(self):
        checks = self.cleaned_data.get('checks') or []
        if not isinstance(checks, list):
            raise forms.ValidationError("checks must be a list of names")
        unknown = [c for c in checks if c not in CHECK_CHOICES]
        if unknown:
            raise forms.ValidationError(f"unknown checks {unknown}; choose from {CHECK_CHOICES}")
        return checks

    def clean_tolerances(self):
        tolerances = self.cleaned_data.get('tolerances') or {}
        if not isinstance(tolerances, dict):
            raise forms.ValidationError("tolerances must map check names to numbers")
        for name, value in tolerances.items():
            if not isinstance(value, (int, float)) or isinstance(value, bool) or not value > 0:
                raise forms.ValidationError(f"tolerance {name!r} must be a positive number")
        return {name: float(value) for name, value in tolerances.items()}


SECTION_FORMS = {
    'shape': ShapeForm,
    'state': StateForm,
    'grid': GridForm,
}


def _form_data(section):
    """Nested values reach JSONField as JSON text, scalars as they are"""
    return {
        key: json.dumps(value) if isinstance(value, (list, dict)) else value
        for key, value in section.items()
    }


def _collect(prefix, form, errors):
    for field, messages in form.errors.items():
        path = prefix if field == '__all__' else f"{prefix}.{field}" if prefix else field
        errors.extend(f"{path}: {message}" for message in messages)


def validate_run_config(raw):
    """Cleaned run configuration, or ConfigError listing every problem by dotted path"""
    if not isinstance(raw, dict):
        raise ConfigError("run file must hold a JSON object")
    errors = []
    unknown = set(raw) - set(SECTION_FORMS) - set(RunConfigForm.base_fields)
    errors.extend(f"{key}: unknown key" for key in sorted(unknown))

    top = RunConfigForm(_form_data({k: v for k, v in raw.items() if k not in SECTION_FORMS}))
    cleaned = dict(top.cleaned_data) if top.is_valid() else {}
    _collect('', top, errors)

    for name, form_class in SECTION_FORMS.items():
        section = raw.get(name)
        if section is None and name == 'grid':
            section = {'nx': 101, 'np': 101}
        if not isinstance(section, dict):
            errors.append(f"{name}: section is missing or not an object")
            continue
        form = form_class(_form_data(section))
        if form.is_valid():
            cleaned[name] = form.cleaned_data
        _collect(name, form, errors)

    if errors:
        raise ConfigError(errors)
    return cleaned
