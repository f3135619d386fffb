# Tested outside the scope of where coverage can detect
from . import main  # pragma: no cover
main()  # pragma: no cover
