from django.urls import path
from . import views

app_name = 'cli_runner'

urlpatterns = [
    path('analyze-ci/', views.analyze_ci, name='analyze_ci'),
    path('flux-table/<str:representation>/', views.flux_table, name='flux_table'),
    path('runs/<int:run_id>/', views.run_detail, name='run_detail'),
]
