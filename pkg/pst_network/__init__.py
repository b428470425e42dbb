# __init__.py - Pakiet pst_network: PST na grafach, sieci p-PST, trasowanie kwantowe

__version__ = "1.0.1"
