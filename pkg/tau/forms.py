from decimal import Decimal, InvalidOperation

from django import forms

from tau import constants
from tau.diophantine import sample_number
from tau.exceptions import InvalidArgument

FORMAT_CHOICES = [('json', 'JSON lines'), ('csv', 'CSV'), ('text', 'text')]


class ScientificIntegerField(forms.Field):
    """An exact integer that may be written as 8.0e25."""

    def __init__(self, *, min_value=None, **kwargs):
        self.min_value = min_value
        super().__init__(**kwargs)

    def to_python(self, value):
        if value in self.empty_values:
            return None
        if isinstance(value, int):
            return value
        try:
            number = Decimal(str(value).strip())
        except InvalidOperation:
            raise forms.ValidationError('Enter an integer such as 80000000000000000000000000 or 8.0e25.')
        if not number.is_finite() or number != number.to_integral_value():
            raise forms.ValidationError('Enter a whole number.')
        return int(number)

    def validate(self, value):
        super().validate(value)
        if value is not None and self.min_value is not None and value < self.min_value:
            raise forms.ValidationError(f'Ensure this value is at least {self.min_value}.')


class RealField(forms.Field):
    """A real kept as its normalized decimal string, so mpmath reads it at full precision."""

    def __init__(self, *, min_value=None, strict=False, **kwargs):
        self.min_value = min_value
        self.strict = strict
        super().__init__(**kwargs)

    def to_python(self, value):
        if value in self.empty_values:
            return None
        try:
            number = Decimal(str(value).strip())
        except InvalidOperation:
            raise forms.ValidationError('Enter a number.')
        if not number.is_finite():
            raise forms.ValidationError('Enter a finite number.')
        return str(number)

    def validate(self, value):
        super().validate(value)
        if value is None or self.min_value is None:
            return
        number, floor = Decimal(value), Decimal(self.min_value)
        if number < floor or (self.strict and number == floor):
            relation = 'greater than' if self.strict else 'at least'
            raise forms.ValidationError(f'Ensure this value is {relation} {self.min_value}.')


class IntegerListField(forms.Field):

    def to_python(self, value):
        if value in self.empty_values:
            return []
        if isinstance(value, str):
            value = [part for part in value.replace(' ', '').split(',') if part]
        try:
            return [int(part) for part in value]
        except (TypeError, ValueError):
            raise forms.ValidationError('Enter a comma-separated list of integers.')


class RealListField(forms.Field):
    def to_python(self, value):
        if value in self.empty_values:
            return []
        if isinstance(value, str):
            value = [part for part in value.replace(' ', '').split(',') if part]
        real = RealField()
        return [real.to_python(part) for part in value]


class ReportForm(forms.Form):
    format = forms.ChoiceField(choices=FORMAT_CHOICES)
    full_value_digits = forms.IntegerField(min_value=1)
    output = forms.CharField(required=False)


class CoeffForm(forms.Form):
    n = forms.IntegerField(min_value=1, required=False)
    prime_power = IntegerListField(required=False)
    weight = forms.IntegerField(min_value=4)
    tau_p = forms.IntegerField(required=False)
    table = forms.IntegerField(min_value=1, required=False)
    output = forms.CharField(required=False)

    def clean_prime_power(self):
        prime_power = self.cleaned_data['prime_power']
        if prime_power and len(prime_power) != 2:
            raise forms.ValidationError('Give a prime and an exponent.')
        return prime_power

    def clean_weight(self):
        weight = self.cleaned_data['weight']
        if weight % 2:
            raise forms.ValidationError('The weight must be even.')
        return weight

    def clean(self):
        cleaned_data = super().clean()
        chosen = [name for name in ('n', 'prime_power', 'table') if cleaned_data.get(name)]
        if len(chosen) != 1:
            raise forms.ValidationError('Give exactly one of n, --prime-power or --table.')
        if cleaned_data.get('weight') != constants.weight_default:
            if not cleaned_data.get('prime_power') or cleaned_data.get('tau_p') is None:
                raise forms.ValidationError('Weights other than 12 need --prime-power and --tau-p.')
        return cleaned_data


class SeriesForm(forms.Form):
    limit = forms.IntegerField(min_value=1)
    check = forms.BooleanField(required=False)
    output = forms.CharField(required=False)


class ScanForm(forms.Form):
    p_max = forms.IntegerField(min_value=2)
    exponent_primes = IntegerListField()
    workers = forms.IntegerField(min_value=1, max_value=256)
    format = forms.ChoiceField(choices=FORMAT_CHOICES)
    output = forms.CharField(required=False)
    checkpoint = forms.CharField(required=False)
    resume = forms.BooleanField(required=False)
    full_values = forms.BooleanField(required=False)

    def clean_exponent_primes(self):
        exponent_primes = self.cleaned_data['exponent_primes']
        if not exponent_primes:
            raise forms.ValidationError('Give at least one exponent prime.')
        return sorted(set(exponent_primes))


class AuditForm(ReportForm):
    epsilon = RealField(min_value='0', strict=True)
    murty_saradha_c = RealField(min_value='0', strict=True)
    matveev_c0 = RealField(min_value='0', strict=True)
    q_bound = ScientificIntegerField(min_value=1)
    case_split_decades = forms.IntegerField(min_value=1)
    log_power_exponent = forms.IntegerField(min_value=1)
    p_max = forms.IntegerField(min_value=2)
    exponent_primes = IntegerListField()
    workers = forms.IntegerField(min_value=1, max_value=256)
    example = forms.TypedChoiceField(
        choices=[(str(p), str(p)) for p in sorted(constants.liouville_examples)], coerce=int, required=False
    )


class MatveevForm(ReportForm):
    d = forms.IntegerField(min_value=1)
    k_field = forms.IntegerField(min_value=1)
    B = forms.IntegerField(min_value=1)
    heights = RealListField(required=False)
    matveev_c0 = RealField(min_value='0', strict=True)

    def clean(self):
        cleaned_data = super().clean()
        d, heights = cleaned_data.get('d'), cleaned_data.get('heights')
        if d is not None and heights and len(heights) != d:
            self.add_error('heights', f'Expected {d} heights.')
        return cleaned_data


class ContinuedFractionForm(ReportForm):
    x = forms.CharField()
    count = forms.IntegerField(min_value=1, max_value=5000)
    precision_bits = forms.IntegerField(min_value=constants.angle_min_precision)

    def clean_x(self):
        try:
            return sample_number(self.cleaned_data['x'])
        except InvalidArgument as exc:
            raise forms.ValidationError(str(exc))
