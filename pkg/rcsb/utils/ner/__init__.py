__docformat__ = "restructuredtext en"
__license__ = "Apache 2.0"
__version__ = "0.12"
