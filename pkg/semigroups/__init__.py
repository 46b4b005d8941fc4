import importlib
import inspect
import logging
from pathlib import Path

LOGGER_NAME = 'Semigroups'


def _import_all_modules():
    """ Dynamically imports all modules in this package. """
    # Modules starting with an underscore, including this one, are skipped.
    for path in sorted(Path(__file__).resolve().parent.glob('*.py')):
        if not path.name.startswith('_'):
            importlib.import_module('.'.join([__name__, path.stem]))


_import_all_modules()

from semigroups._base import _SemigroupModelBase  # noqa: E402

""" Dynamically generated dict with all available Semigroup Models. """
SEMIGROUP_MODELS = dict()


def add_semigroup_models(classes):
    for cls in classes:
        if not inspect.isabstract(cls):
            SEMIGROUP_MODELS[cls.name] = cls
        add_semigroup_models(cls.__subclasses__())


add_semigroup_models(_SemigroupModelBase.__subclasses__())

if not SEMIGROUP_MODELS:
    logging.getLogger(LOGGER_NAME).error('Error: No Semigroup Models found.')
    raise ImportError('No Semigroup Models found.')

if NotImplemented in SEMIGROUP_MODELS.keys():
    logging.getLogger(LOGGER_NAME).error('Error: "%s" must override the "name" variable.',
                                         str(SEMIGROUP_MODELS[NotImplemented].__name__))
    raise ImportError('"{}" must override the "name" variable.'.format(SEMIGROUP_MODELS[NotImplemented].__name__))
